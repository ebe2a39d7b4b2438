#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace logicscan {

struct LabelEntry {
    std::string contract;
    std::string function;
    bool vulnerable = false;
};

// Ground truth plus the total number of audited functions. The universe is
// dataset metadata we require rather than infer; when the label file does
// not carry a {"universe": N} line it defaults to the number of entries.
struct LabelSet {
    std::vector<LabelEntry> entries;
    std::size_t universe = 0;

    static LabelSet load_jsonl(const std::filesystem::path& path);
    static LabelSet from_jsonl_text(std::string_view text, const std::string& origin);
};

struct Prediction {
    std::string contract;
    std::string function;  // kContractLevel for findings outside any function

    bool operator<(const Prediction& o) const {
        return std::tie(contract, function) < std::tie(o.contract, o.function);
    }
    bool operator==(const Prediction&) const = default;
};

inline constexpr const char* kContractLevel = "<contract-level>";

struct UnknownFile : std::runtime_error {
    explicit UnknownFile(const std::string& path)
        : std::runtime_error("cannot load source referenced by report: " + path) {}
};

// Maps each finding coordinate to its enclosing function span; coordinates
// outside every function land in the per-contract kContractLevel bucket
// (scored as a false positive on labeled sets, which only label functions).
// Duplicate findings per function collapse to one prediction.
//
// `load_source` resolves a source path to file content; returning nullopt
// makes the mapper fall back to the function name recorded in the report and
// raise UnknownFile only when there is none.
std::set<Prediction> map_report_to_functions(
    const nlohmann::json& report,
    const std::function<std::optional<std::string>(const std::string&)>& load_source);

struct Metrics {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    // Fractions in [0,1]; nullopt = undefined, rendered "--".
    std::optional<double> precision, recall, f1, fpr;

    static Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                               std::size_t universe);
};

Metrics score(const std::set<Prediction>& predictions, const LabelSet& labels);

// One-decimal percentage or "--".
std::string render_metric(const std::optional<double>& value);
std::string metrics_csv(const Metrics& m);

}  // namespace logicscan
