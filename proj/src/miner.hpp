#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bsl.hpp"
#include "corpus.hpp"
#include "gateway.hpp"
#include "solidity.hpp"
#include "store.hpp"

namespace logicscan {

struct CountMismatchError {
    std::size_t actual_count;  // explicit checks in the expanded source
    std::size_t bsl_count;     // checks named by the candidate BSL

    // Stable rendering, embedded verbatim in repair prompts.
    std::string message() const;
};

using BslValidation = std::variant<BslSpec, BslSyntaxError, CountMismatchError>;

// Syntactic gate first (strict parse), then the semantic gate: the number of
// named checks must equal the number of explicit checks in the expanded
// source. Surrounding whitespace is tolerated; everything else is not.
BslValidation validate_bsl(std::string_view bsl_text, const ExpandedFunction& expanded);

std::string validation_error_message(const BslValidation& v);

// Hard ceiling on repair turns per function. The initial generation is
// attempt 0; each repair turn increments, so a skipped function has made
// exactly kMaxRepairAttempts repair requests.
inline constexpr int kMaxRepairAttempts = 4;

struct MineResult {
    enum class Status { kSuccess, kSkipped };
    Status status = Status::kSkipped;
    int attempts = 0;  // repair turns consumed
    std::string reason;  // set when skipped
    std::optional<FunctionRecord> record;
    Session session;

    bool ok() const { return status == Status::kSuccess; }
    // One line per mined function, the format grep'd by operators and tests.
    std::string log_line(const ContractMeta& meta) const;
};

// One session per function: describe (R1), summarize checks (R2), generate
// BSL (R3), then repair (R4) until valid or the attempt ceiling is hit.
// Backend failures surface as Skipped, never as exceptions.
MineResult mine_function(const ContractMeta& meta, const ParsedSource& src,
                         const FunctionEntry& entry, Backend& backend);

}  // namespace logicscan
