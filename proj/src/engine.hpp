#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "checker.hpp"
#include "config.hpp"
#include "corpus.hpp"
#include "evalkit.hpp"
#include "gateway.hpp"
#include "knowledge.hpp"
#include "miner.hpp"
#include "store.hpp"

namespace logicscan {

enum class RunStatus { kOk, kPartial };

struct MineSummary {
    int mined = 0;
    int skipped = 0;
    int parse_failures = 0;
    RunStatus status = RunStatus::kOk;
};

struct CheckSummary {
    std::vector<FunctionReport> reports;
    RunStatus status = RunStatus::kOk;
};

struct EvalSummary {
    Metrics metrics;
    std::string csv;
};

// Command-line overrides that replace or wrap the configured backends.
struct EngineOverrides {
    // Replay: both miner and checker answer from this script; no backend in
    // the config is ever contacted.
    std::optional<std::filesystem::path> replay_script;
    // Record: every exchange of the run is appended to this script file.
    std::optional<std::filesystem::path> record_script;
};

// Wires the configured embedder, backends, category map, dictionary and
// store together and exposes one method per CLI command. Throws ConfigError
// for input problems the caller should report as usage errors.
class Engine {
 public:
    using LogFn = std::function<void(const std::string&)>;

    explicit Engine(Config cfg, EngineOverrides overrides = {}, LogFn log = {});

    void corpus_filter(const std::filesystem::path& corpus_path, double percentile,
                       const std::filesystem::path& out_path);
    void corpus_categorize(const std::filesystem::path& corpus_path,
                           const std::filesystem::path& out_path);

    // Mines every public function of every contract in the corpus into the
    // store. Parsing is sequential; backend sessions run on a bounded pool.
    MineSummary mine(const std::filesystem::path& corpus_path);

    std::string dict_rank(std::size_t top_n) const;

    // Audits the target file (all public functions, or just `function_name`
    // when non-empty) and writes the JSON report to report_path.
    CheckSummary check(const std::filesystem::path& target_path,
                       const std::string& function_name,
                       const std::filesystem::path& report_path);

    EvalSummary eval(const std::filesystem::path& report_path,
                     const std::filesystem::path& labels_path) const;

    std::string db_stats() const;

    const Config& config() const { return cfg_; }
    const CategoryMap& categories() const { return categories_; }
    const SynonymDictionary& dictionary() const { return dict_; }
    LogicStore& store() { return *store_; }

 private:
    std::vector<ContractMeta> load_corpus_input(const std::filesystem::path& path,
                                                std::filesystem::path* base_dir) const;
    void log(const std::string& line) const;

    Config cfg_;
    CategoryMap categories_;
    SynonymDictionary dict_;
    std::shared_ptr<Embedder> embedder_;
    std::shared_ptr<Backend> miner_backend_;
    std::shared_ptr<Backend> checker_backend_;
    std::shared_ptr<ScriptRecorder> recorder_;
    std::unique_ptr<LogicStore> store_;
    LogFn log_;
};

}  // namespace logicscan
