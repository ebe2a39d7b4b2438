#include "miner.hpp"

namespace logicscan {

std::string CountMismatchError::message() const {
    return "count mismatch: source has " + std::to_string(actual_count) +
           " explicit checks but the BSL names " + std::to_string(bsl_count);
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r'))
        --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

BslValidation validate_bsl(std::string_view bsl_text, const ExpandedFunction& expanded) {
    BslParseResult parsed = parse_bsl(bsl_text);
    if (auto* err = std::get_if<BslSyntaxError>(&parsed)) return *err;
    BslSpec spec = std::get<BslSpec>(std::move(parsed));
    std::size_t actual = find_explicit_checks(expanded.expanded_source).size();
    if (check_count(spec) != actual) return CountMismatchError{actual, check_count(spec)};
    return spec;
}

std::string validation_error_message(const BslValidation& v) {
    if (auto* syn = std::get_if<BslSyntaxError>(&v)) return syn->message();
    if (auto* cnt = std::get_if<CountMismatchError>(&v)) return cnt->message();
    return "";
}

std::string MineResult::log_line(const ContractMeta& meta) const {
    std::string line = "MINE " + (meta.name.empty() ? meta.address : meta.name) + " ";
    line += record ? record->expanded.entry.name : "?";
    line += ok() ? " Success" : " Skipped";
    line += " attempts=" + std::to_string(attempts);
    if (!ok() && !reason.empty()) line += " reason=\"" + reason + "\"";
    return line;
}

MineResult mine_function(const ContractMeta& meta, const ParsedSource& src,
                         const FunctionEntry& entry, Backend& backend) {
    MineResult result;
    ExpandedFunction expanded = expand_call_chain(src, entry.name);

    // Keep a shell record around so the log line can name the function even
    // when mining fails before assembly.
    FunctionRecord rec;
    rec.expanded = expanded;

    try {
        std::string functional = trim(complete(backend, result.session,
                                               builtin_template(TemplateId::kR1FuncDesc),
                                               {{"name", entry.name},
                                                {"code", expanded.expanded_source},
                                                {"category", meta.category}}));
        std::string logical = trim(complete(backend, result.session,
                                            builtin_template(TemplateId::kR2LogicSummary), {}));
        std::string bsl_text = trim(complete(backend, result.session,
                                             builtin_template(TemplateId::kR3BslGen),
                                             {{"grammar", kBslGrammar}}));

        BslValidation validated = validate_bsl(bsl_text, expanded);
        while (!std::holds_alternative<BslSpec>(validated) &&
               result.attempts < kMaxRepairAttempts) {
            ++result.attempts;
            bsl_text = trim(complete(backend, result.session,
                                     builtin_template(TemplateId::kR4Repair),
                                     {{"error", validation_error_message(validated)},
                                      {"invalid_bsl", bsl_text}}));
            validated = validate_bsl(bsl_text, expanded);
        }

        if (!std::holds_alternative<BslSpec>(validated)) {
            result.status = MineResult::Status::kSkipped;
            result.reason = validation_error_message(validated);
            result.record = std::move(rec);
            return result;
        }

        rec.id = function_record_id(meta.address, entry.name);
        rec.contract = meta;
        rec.functional_desc = functional;
        rec.logical_desc = logical;
        rec.bsl = std::get<BslSpec>(std::move(validated));
        rec.category = meta.category;
        rec.solidity_major = src.pragma_major.value_or(-1);
        result.status = MineResult::Status::kSuccess;
        result.record = std::move(rec);
        return result;
    } catch (const GatewayError& e) {
        result.status = MineResult::Status::kSkipped;
        result.reason = std::string("backend: ") + e.what();
        result.record = std::move(rec);
        return result;
    }
}

}  // namespace logicscan
