#include "evalkit.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "corpus.hpp"
#include "fsutil.hpp"
#include "solidity.hpp"

namespace logicscan {

using nlohmann::json;

LabelSet LabelSet::from_jsonl_text(std::string_view text, const std::string& origin) {
    LabelSet out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> universe;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": invalid JSON line");
        if (j.contains("universe")) {
            universe = j["universe"].get<std::size_t>();
            continue;
        }
        LabelEntry e;
        e.contract = j.value("contract", "");
        e.function = j.value("function", "");
        e.vulnerable = j.value("vulnerable", false);
        if (e.contract.empty() || e.function.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": label needs contract and function");
        out.entries.push_back(std::move(e));
    }
    out.universe = universe.value_or(out.entries.size());
    return out;
}

LabelSet LabelSet::load_jsonl(const std::filesystem::path& path) {
    return from_jsonl_text(read_file(path), path.string());
}

std::set<Prediction> map_report_to_functions(
    const json& report,
    const std::function<std::optional<std::string>(const std::string&)>& load_source) {
    if (!report.is_array()) throw ConfigError("report must be a JSON array");

    std::map<std::string, std::optional<ParsedSource>> parsed_cache;
    auto functions_for = [&](const std::string& path) -> const std::optional<ParsedSource>& {
        auto it = parsed_cache.find(path);
        if (it != parsed_cache.end()) return it->second;
        std::optional<ParsedSource> parsed;
        if (auto text = load_source(path)) {
            try {
                parsed = parse_solidity(*text);
            } catch (const SolidityParseError&) {
                parsed = std::nullopt;  // fall back to recorded names below
            }
        }
        return parsed_cache.emplace(path, std::move(parsed)).first->second;
    };

    std::set<Prediction> out;
    for (const auto& entry : report) {
        if (!entry.is_object()) continue;
        std::string contract = entry.value("contract", "");
        std::string recorded_fn = entry.value("function", "");
        std::string source = entry.value("source", "");
        for (const auto& finding : entry.value("findings", json::array())) {
            std::optional<std::size_t> offset;
            if (finding.is_object() && finding.contains("source_span") &&
                finding["source_span"].is_object())
                offset = finding["source_span"].value("begin", std::size_t{0});

            if (offset && !source.empty()) {
                const auto& parsed = functions_for(source);
                if (parsed) {
                    const FunctionEntry* enclosing = nullptr;
                    for (const auto& f : parsed->functions)
                        if (f.source_span.contains(*offset)) { enclosing = &f; break; }
                    out.insert({contract, enclosing ? enclosing->name : kContractLevel});
                    continue;
                }
            }
            if (!recorded_fn.empty()) {
                out.insert({contract, recorded_fn});
                continue;
            }
            throw UnknownFile(source.empty() ? "(report entry without source)" : source);
        }
    }
    return out;
}

Metrics Metrics::from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                             std::size_t universe) {
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    std::size_t used = tp + fp + fn;
    m.tn = universe > used ? universe - used : 0;

    // A label set without positives (tp+fn == 0) yields no meaningful
    // precision/recall/f1 row; all three render as dashes.
    bool has_positives = tp + fn > 0;
    if (tp + fp > 0 && has_positives) m.precision = static_cast<double>(tp) / (tp + fp);
    if (has_positives) m.recall = static_cast<double>(tp) / (tp + fn);
    if (m.precision && m.recall && *m.precision + *m.recall > 0.0)
        m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
    if (fp + m.tn > 0) m.fpr = static_cast<double>(fp) / (fp + m.tn);
    return m;
}

Metrics score(const std::set<Prediction>& predictions, const LabelSet& labels) {
    std::set<Prediction> vulnerable;
    for (const auto& e : labels.entries)
        if (e.vulnerable) vulnerable.insert({e.contract, e.function});

    std::size_t tp = 0;
    for (const auto& p : predictions)
        if (vulnerable.count(p)) ++tp;
    std::size_t fp = predictions.size() - tp;
    std::size_t fn = vulnerable.size() - tp;
    return Metrics::from_counts(tp, fp, fn, labels.universe);
}

std::string render_metric(const std::optional<double>& value) {
    if (!value) return "--";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", *value * 100.0);
    return buf;
}

std::string metrics_csv(const Metrics& m) {
    std::string out = "tp,fp,fn,tn,precision,recall,f1,fpr\n";
    out += std::to_string(m.tp) + "," + std::to_string(m.fp) + "," + std::to_string(m.fn) + "," +
           std::to_string(m.tn) + "," + render_metric(m.precision) + "," +
           render_metric(m.recall) + "," + render_metric(m.f1) + "," + render_metric(m.fpr) + "\n";
    return out;
}

}  // namespace logicscan
