#include "checker.hpp"

#include <algorithm>
#include <set>

namespace logicscan {

using nlohmann::json;

std::string_view to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::kEnforced: return "enforced";
        case VerdictStatus::kSemanticallyPreserved: return "semantically_preserved";
        case VerdictStatus::kMissing: return "missing";
        case VerdictStatus::kPartial: return "partial";
    }
    return "missing";
}

std::optional<VerdictStatus> verdict_status_from(std::string_view s) {
    if (s == "enforced") return VerdictStatus::kEnforced;
    if (s == "semantically_preserved") return VerdictStatus::kSemanticallyPreserved;
    if (s == "missing") return VerdictStatus::kMissing;
    if (s == "partial") return VerdictStatus::kPartial;
    return std::nullopt;
}

std::string_view to_string(FindingClass c) {
    return c == FindingClass::kReviewWorthy ? "review_worthy" : "benign_deviation";
}

std::variant<AuditContext, NoReference> build_audit_context(
    const LogicStore& store, const ContractMeta& meta, const ParsedSource& src,
    const FunctionEntry& entry, Backend& miner_backend, const SynonymDictionary& dict,
    const AuditOptions& opts, Session& session) {
    AuditContext ctx;
    ctx.meta = meta;
    ctx.target = expand_call_chain(src, entry.name);

    ctx.target_desc = complete(miner_backend, session, builtin_template(TemplateId::kR1FuncDesc),
                               {{"name", entry.name},
                                {"code", ctx.target.expanded_source},
                                {"category", meta.category}});

    int major = meta.solidity_major.value_or(src.pragma_major.value_or(-1));
    ctx.templates = store.query(ctx.target_desc, major, meta.category, opts.retrieval_k,
                                opts.min_similarity);
    if (ctx.templates.empty())
        return NoReference{"no reference template at or above similarity threshold for category '" +
                           (meta.category.empty() ? std::string("(any)") : meta.category) +
                           "', solidity 0." + std::to_string(major)};

    ctx.writers = find_state_variable_writers(src, ctx.target);

    std::vector<BslSpec> specs;
    specs.reserve(ctx.templates.size());
    for (const auto& c : ctx.templates) specs.push_back(c.record.bsl);
    ctx.checklist = opts.aggregate_templates ? aggregate_invariants(specs, dict)
                                             : union_invariants(specs, dict);

    for (const auto& cand : ctx.templates) {
        std::set<std::string> canon;
        for (const auto& check : cand.record.bsl.checks) canon.insert(dict.canonicalize(check));
        for (const auto& name : canon) ctx.supporting_ids[name].push_back(cand.record.id);
    }
    return ctx;
}

namespace {

// Tolerates ```json fences around an otherwise valid reply; models add them
// even when told not to.
json parse_reply_json(const std::string& reply) {
    std::string_view s = reply;
    auto skip_ws = [&](std::string_view& v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\n' || v.front() == '\r' ||
                              v.front() == '\t'))
            v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\n' || v.back() == '\r' ||
                              v.back() == '\t'))
            v.remove_suffix(1);
    };
    skip_ws(s);
    if (s.substr(0, 3) == "```") {
        auto nl = s.find('\n');
        if (nl != std::string_view::npos) s.remove_prefix(nl + 1);
        if (s.size() >= 3 && s.substr(s.size() - 3) == "```") s.remove_suffix(3);
        skip_ws(s);
    }
    return json::parse(s, nullptr, false);
}

std::string render_templates_block(const std::vector<Candidate>& templates) {
    std::string out;
    for (std::size_t i = 0; i < templates.size(); ++i) {
        const auto& rec = templates[i].record;
        out += "Template " + std::to_string(i + 1) + " (id " + rec.id + "):\n";
        out += rec.expanded.expanded_source;
        out += "\nBSL: " + print_bsl(rec.bsl) + "\n\n";
    }
    return out;
}

std::string render_writers_block(const std::vector<FunctionEntry>& writers, bool include) {
    if (!include) return "(writer context disabled)";
    if (writers.empty()) return "(none found)";
    std::string out;
    for (const auto& w : writers) {
        out += "function " + w.name + " [" + std::string(to_string(w.visibility)) + "] {";
        out += w.body_text;
        out += "}\n";
    }
    return out;
}

const char* kReaskSuffix =
    "\n\nYour previous reply was not valid JSON matching the required schema. Reply again with "
    "only the JSON array in the required schema.";

// Single re-ask policy: render once, and if the reply violates the schema,
// send the same prompt with a corrective suffix (a distinct digest, so
// recorded scripts can hold both turns).
template <typename Validate>
std::optional<json> phase_with_reask(Backend& backend, Session& session, TemplateId id,
                                     const Bindings& bindings, Validate&& validate,
                                     std::string& raw_out) {
    const PromptTemplate& tmpl = builtin_template(id);
    std::string reply = complete(backend, session, tmpl, bindings);
    raw_out = reply;
    json parsed = parse_reply_json(reply);
    if (validate(parsed)) return parsed;

    PromptTemplate retry{tmpl.id, tmpl.text + kReaskSuffix};
    reply = complete(backend, session, retry, bindings);
    raw_out = reply;
    parsed = parse_reply_json(reply);
    if (validate(parsed)) return parsed;
    return std::nullopt;
}

}  // namespace

AuditOutcome audit(const AuditContext& ctx, Backend& checker_backend, Session& session,
                   const AuditOptions& opts) {
    AuditOutcome out;

    // Phase C1: free induction over the raw templates. The reply stays in
    // the session as context; the deterministic checklist injected in C2 is
    // what actually calibrates the verdicts.
    complete(checker_backend, session, builtin_template(TemplateId::kC1Induction),
             {{"category", ctx.meta.category},
              {"k", std::to_string(ctx.templates.size())},
              {"templates", render_templates_block(ctx.templates)}});

    std::set<std::string> expected;
    for (const auto& inv : ctx.checklist.invariants) expected.insert(inv.name);

    // Phase C2: one verdict per checklist invariant, closed status set,
    // exact coverage of the checklist.
    auto validate_c2 = [&](const json& j) {
        if (j.is_discarded() || !j.is_array()) return false;
        std::set<std::string> seen;
        for (const auto& item : j) {
            if (!item.is_object() || !item.contains("invariant") || !item.contains("status"))
                return false;
            if (!item["invariant"].is_string() || !item["status"].is_string()) return false;
            if (!verdict_status_from(item["status"].get<std::string>())) return false;
            std::string name = item["invariant"].get<std::string>();
            if (!expected.count(name) || !seen.insert(name).second) return false;
        }
        return seen == expected;
    };

    std::string raw;
    auto c2 = phase_with_reask(checker_backend, session, TemplateId::kC2Verification,
                               {{"common_template", common_template_json(ctx.checklist)},
                                {"target_code", ctx.target.expanded_source},
                                {"writer_code",
                                 render_writers_block(ctx.writers, opts.include_writers)}},
                               validate_c2, raw);
    if (!c2) {
        out.status = AuditOutcome::Status::kAuditFailed;
        out.detail = "verification reply failed schema validation: " + raw;
        return out;
    }
    for (const auto& item : *c2)
        out.verdicts.push_back(
            {item["invariant"].get<std::string>(),
             *verdict_status_from(item["status"].get<std::string>()),
             item.value("evidence", "")});
    // Deterministic order regardless of reply order: checklist order.
    std::sort(out.verdicts.begin(), out.verdicts.end(),
              [&](const InvariantVerdict& a, const InvariantVerdict& b) {
                  auto pos = [&](const std::string& name) {
                      for (std::size_t i = 0; i < ctx.checklist.invariants.size(); ++i)
                          if (ctx.checklist.invariants[i].name == name) return i;
                      return ctx.checklist.invariants.size();
                  };
                  return pos(a.invariant) < pos(b.invariant);
              });

    std::vector<const InvariantVerdict*> deviations;
    for (const auto& v : out.verdicts)
        if (v.status == VerdictStatus::kMissing || v.status == VerdictStatus::kPartial)
            deviations.push_back(&v);
    if (deviations.empty()) return out;

    // Phase C3: classify each deviation; exact coverage again.
    std::set<std::string> deviation_names;
    json deviation_list = json::array();
    for (const auto* v : deviations) {
        deviation_names.insert(v->invariant);
        deviation_list.push_back({{"invariant", v->invariant},
                                  {"status", std::string(to_string(v->status))}});
    }
    auto validate_c3 = [&](const json& j) {
        if (j.is_discarded() || !j.is_array()) return false;
        std::set<std::string> seen;
        for (const auto& item : j) {
            if (!item.is_object() || !item.contains("invariant") ||
                !item.contains("classification"))
                return false;
            if (!item["invariant"].is_string() || !item["classification"].is_string())
                return false;
            std::string cls = item["classification"].get<std::string>();
            if (cls != "review_worthy" && cls != "benign_deviation") return false;
            std::string name = item["invariant"].get<std::string>();
            if (!deviation_names.count(name) || !seen.insert(name).second) return false;
        }
        return seen == deviation_names;
    };

    auto c3 = phase_with_reask(checker_backend, session, TemplateId::kC3Deviation,
                               {{"deviations", deviation_list.dump()}}, validate_c3, raw);
    if (!c3) {
        out.status = AuditOutcome::Status::kAuditFailed;
        out.detail = "deviation reply failed schema validation: " + raw;
        out.findings.clear();
        return out;
    }

    std::map<std::string, std::pair<FindingClass, std::string>> classified;
    for (const auto& item : *c3)
        classified[item["invariant"].get<std::string>()] = {
            item["classification"].get<std::string>() == "review_worthy"
                ? FindingClass::kReviewWorthy
                : FindingClass::kBenignDeviation,
            item.value("rationale", "")};

    for (const auto* v : deviations) {
        Finding f;
        f.function_id = function_record_id(ctx.meta.address, ctx.target.entry.name);
        f.invariant = v->invariant;
        auto it = classified.find(v->invariant);
        f.classification = it->second.first;
        f.rationale = it->second.second;
        if (auto ids = ctx.supporting_ids.find(v->invariant); ids != ctx.supporting_ids.end())
            f.supporting_template_ids = ids->second;
        f.source_span = ctx.target.entry.source_span;
        out.findings.push_back(std::move(f));
    }
    return out;
}

json report_to_json(const std::vector<FunctionReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json verdicts = json::array();
        for (const auto& v : r.verdicts)
            verdicts.push_back({{"invariant", v.invariant},
                                {"status", std::string(to_string(v.status))},
                                {"evidence", v.evidence}});
        json findings = json::array();
        for (const auto& f : r.findings)
            findings.push_back({{"function_id", f.function_id},
                                {"invariant", f.invariant},
                                {"classification", std::string(to_string(f.classification))},
                                {"rationale", f.rationale},
                                {"supporting_template_ids", f.supporting_template_ids},
                                {"source_span",
                                 {{"begin", f.source_span.begin}, {"end", f.source_span.end}}}});
        json entry{{"function_id", r.function_id},
                   {"contract", r.contract_name},
                   {"function", r.function_name},
                   {"source", r.source_path},
                   {"status", r.status},
                   {"verdicts", verdicts},
                   {"findings", findings},
                   {"accounting", {{"tokens", r.tokens}, {"ms", r.ms}}}};
        if (!r.detail.empty()) entry["detail"] = r.detail;
        arr.push_back(std::move(entry));
    }
    return arr;
}

std::string report_to_text(const std::vector<FunctionReport>& reports) {
    std::string out;
    std::size_t flagged = 0;
    for (const auto& r : reports) {
        out += r.contract_name + "." + r.function_name + " [" + r.status + "]";
        out += " tokens=" + std::to_string(r.tokens) + " ms=" + std::to_string(r.ms) + "\n";
        if (!r.detail.empty()) out += "  note: " + r.detail + "\n";
        for (const auto& v : r.verdicts)
            out += "  " + v.invariant + ": " + std::string(to_string(v.status)) + "\n";
        for (const auto& f : r.findings) {
            ++flagged;
            out += "  finding: " + f.invariant + " " + std::string(to_string(f.classification)) +
                   " (" + std::to_string(f.supporting_template_ids.size()) + " templates)";
            if (!f.rationale.empty()) out += " " + f.rationale;
            out += "\n";
        }
    }
    out += std::to_string(reports.size()) + " function(s) audited, " + std::to_string(flagged) +
           " finding(s)\n";
    return out;
}

}  // namespace logicscan
