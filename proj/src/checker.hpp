#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "aggregate.hpp"
#include "gateway.hpp"
#include "knowledge.hpp"
#include "solidity.hpp"
#include "store.hpp"

namespace logicscan {

enum class VerdictStatus { kEnforced, kSemanticallyPreserved, kMissing, kPartial };
std::string_view to_string(VerdictStatus s);
std::optional<VerdictStatus> verdict_status_from(std::string_view s);

struct InvariantVerdict {
    std::string invariant;  // canonical name from the consensus checklist
    VerdictStatus status = VerdictStatus::kMissing;
    std::string evidence;
};

enum class FindingClass { kReviewWorthy, kBenignDeviation };
std::string_view to_string(FindingClass c);

struct Finding {
    std::string function_id;
    std::string invariant;
    FindingClass classification = FindingClass::kReviewWorthy;
    std::string rationale;
    std::vector<std::string> supporting_template_ids;
    SourceSpan source_span;  // anchored inside the audited function
};

struct AuditOptions {
    std::size_t retrieval_k = 5;
    double min_similarity = 0.80;
    // Ablation switches; production keeps both on.
    bool include_writers = true;
    bool aggregate_templates = true;
};

struct AuditContext {
    ContractMeta meta;
    ExpandedFunction target;
    std::string target_desc;
    std::vector<Candidate> templates;
    std::vector<FunctionEntry> writers;
    CommonTemplate checklist;  // majority-voted, or the raw union under ablation
    // canonical invariant -> ids of retrieved templates that contain it
    std::map<std::string, std::vector<std::string>> supporting_ids;
};

// The unauditable outcome: no reference knowledge is never guessed around.
struct NoReference {
    std::string reason;
};

// Expands the target, derives its functional description through the mining
// backend (R1), retrieves reference templates, collects state-variable
// writers and votes the consensus checklist.
std::variant<AuditContext, NoReference> build_audit_context(
    const LogicStore& store, const ContractMeta& meta, const ParsedSource& src,
    const FunctionEntry& entry, Backend& miner_backend, const SynonymDictionary& dict,
    const AuditOptions& opts, Session& session);

struct AuditOutcome {
    enum class Status { kOk, kAuditFailed };
    Status status = Status::kOk;
    std::vector<InvariantVerdict> verdicts;
    std::vector<Finding> findings;
    std::string detail;  // raw reply on schema failure
};

// Three phases in one session: free induction over the templates (C1),
// per-invariant verification against the target plus writer context (C2),
// and deviation classification for missing/partial invariants (C3).
// Replies must match the published JSON schema; one re-ask is allowed per
// phase, then the function is reported as audit-failed with the raw reply.
AuditOutcome audit(const AuditContext& ctx, Backend& checker_backend, Session& session,
                   const AuditOptions& opts);

// One row of the report file.
struct FunctionReport {
    std::string function_id;
    std::string contract_name;
    std::string function_name;
    std::string source_path;
    std::string status;  // "ok" | "no_reference" | "audit_failed"
    std::vector<InvariantVerdict> verdicts;
    std::vector<Finding> findings;
    std::uint64_t tokens = 0;
    std::uint64_t ms = 0;
    std::string detail;
};

nlohmann::json report_to_json(const std::vector<FunctionReport>& reports);
std::string report_to_text(const std::vector<FunctionReport>& reports);

}  // namespace logicscan
