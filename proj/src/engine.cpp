#include "engine.hpp"

#include <atomic>
#include <iostream>
#include <thread>

#include "fsutil.hpp"
#include "seed_data.hpp"

namespace logicscan {

namespace {

std::shared_ptr<Backend> build_backend(const std::string& kind,
                                       const std::filesystem::path& script,
                                       const std::string& endpoint, const std::string& model,
                                       double temperature) {
    if (kind == "scripted")
        return std::make_shared<ScriptedBackend>(ScriptedBackend::from_file(script));
    if (kind == "remote_http") return std::make_shared<RemoteBackend>(endpoint, model, temperature);
    return std::make_shared<SentinelBackend>();
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results are left to
// the callee to slot by index, so output order stays deterministic.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    workers = std::min(workers == 0 ? std::size_t{1} : workers, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

Engine::Engine(Config cfg, EngineOverrides overrides, LogFn log)
    : cfg_(std::move(cfg)), log_(std::move(log)) {
    categories_ = cfg_.category_map.empty()
                      ? CategoryMap::from_json_text(kSeedCategoryMapJson, "<built-in>")
                      : CategoryMap::load(cfg_.category_map);
    dict_ = cfg_.dictionary.empty()
                ? SynonymDictionary::from_json_text(kSeedDictionaryJson, "<built-in>")
                : SynonymDictionary::load(cfg_.dictionary);

    if (cfg_.embedder == "remote_http")
        embedder_ = std::make_shared<RemoteEmbedder>(cfg_.embedder_endpoint, cfg_.embedder_dim);
    else
        embedder_ = std::make_shared<HashedTokenEmbedder>(cfg_.embedder_dim);

    if (overrides.replay_script) {
        auto scripted =
            std::make_shared<ScriptedBackend>(ScriptedBackend::from_file(*overrides.replay_script));
        miner_backend_ = scripted;
        checker_backend_ = scripted;
    } else {
        miner_backend_ = build_backend(cfg_.miner_backend, cfg_.miner_script, cfg_.miner_endpoint,
                                       cfg_.miner_model, cfg_.temperature);
        checker_backend_ = build_backend(cfg_.checker_backend, cfg_.checker_script,
                                         cfg_.checker_endpoint, cfg_.checker_model,
                                         cfg_.temperature);
    }
    if (overrides.record_script) {
        recorder_ = std::make_shared<ScriptRecorder>(*overrides.record_script);
        miner_backend_ = std::make_shared<RecordingBackend>(miner_backend_, recorder_);
        checker_backend_ = std::make_shared<RecordingBackend>(checker_backend_, recorder_);
    }

    store_ = std::make_unique<LogicStore>(cfg_.store_dir, embedder_);
}

void Engine::log(const std::string& line) const {
    if (log_)
        log_(line);
    else
        std::cerr << line << "\n";
}

std::vector<ContractMeta> Engine::load_corpus_input(const std::filesystem::path& path,
                                                    std::filesystem::path* base_dir) const {
    std::filesystem::path file = path;
    if (std::filesystem::is_directory(path)) {
        if (std::filesystem::exists(path / "corpus.jsonl"))
            file = path / "corpus.jsonl";
        else if (std::filesystem::exists(path / "corpus.csv"))
            file = path / "corpus.csv";
        else
            throw ConfigError("no corpus.jsonl or corpus.csv in " + path.string());
    } else if (!std::filesystem::exists(path)) {
        throw ConfigError("corpus not found: " + path.string());
    }
    if (base_dir) *base_dir = file.parent_path();
    return load_corpus(file);
}

void Engine::corpus_filter(const std::filesystem::path& corpus_path, double percentile,
                           const std::filesystem::path& out_path) {
    auto metas = load_corpus_input(corpus_path, nullptr);
    auto kept = filter_contracts(metas, percentile);
    atomic_write_file(out_path, corpus_to_jsonl(kept));
    log("FILTER kept " + std::to_string(kept.size()) + " of " + std::to_string(metas.size()));
}

void Engine::corpus_categorize(const std::filesystem::path& corpus_path,
                               const std::filesystem::path& out_path) {
    auto metas = load_corpus_input(corpus_path, nullptr);
    std::size_t hits = 0;
    for (auto& meta : metas) {
        auto cat = categorize(tokenize_contract_name(meta.name, categories_), categories_);
        meta.category = cat.value_or("");
        if (cat) ++hits;
    }
    atomic_write_file(out_path, corpus_to_jsonl(metas));
    log("CATEGORIZE labeled " + std::to_string(hits) + " of " + std::to_string(metas.size()));
}

MineSummary Engine::mine(const std::filesystem::path& corpus_path) {
    std::filesystem::path base;
    auto metas = load_corpus_input(corpus_path, &base);

    struct Task {
        ContractMeta meta;
        const ParsedSource* src;
        FunctionEntry entry;
    };
    std::vector<std::unique_ptr<ParsedSource>> sources;
    std::vector<Task> tasks;
    MineSummary sum;

    for (auto& meta : metas) {
        std::filesystem::path src_path = meta.source_path;
        if (src_path.is_relative()) src_path = base / src_path;
        std::string text;
        try {
            text = read_file(src_path);
        } catch (const IoError& e) {
            log("SKIP " + meta.name + " " + e.what());
            ++sum.parse_failures;
            continue;
        }
        std::unique_ptr<ParsedSource> parsed;
        try {
            parsed = std::make_unique<ParsedSource>(parse_solidity(text));
        } catch (const SolidityParseError& e) {
            log("SKIP " + meta.name + " parse error: " + std::string(e.what()));
            ++sum.parse_failures;
            continue;
        }
        for (const auto& w : parsed->warnings) log("WARN " + meta.name + " " + w);
        if (meta.category.empty())
            meta.category =
                categorize(tokenize_contract_name(meta.name, categories_), categories_)
                    .value_or("");
        if (!meta.solidity_major) meta.solidity_major = parsed->pragma_major;
        const ParsedSource* src = parsed.get();
        sources.push_back(std::move(parsed));
        for (const auto& entry : enumerate_public_functions(*src))
            tasks.push_back(Task{meta, src, entry});
    }

    std::vector<MineResult> results(tasks.size());
    parallel_for(tasks.size(), cfg_.parallelism, [&](std::size_t i) {
        results[i] = mine_function(tasks[i].meta, *tasks[i].src, tasks[i].entry, *miner_backend_);
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        log(results[i].log_line(tasks[i].meta));
        if (results[i].ok()) {
            store_->insert(*results[i].record);
            ++sum.mined;
        } else {
            ++sum.skipped;
        }
    }
    store_->save();
    sum.status =
        (sum.skipped > 0 || sum.parse_failures > 0) ? RunStatus::kPartial : RunStatus::kOk;
    return sum;
}

std::string Engine::dict_rank(std::size_t top_n) const {
    // Raw names, not canonicalized: the ranking exists so a curator can spot
    // aliases that are missing from the dictionary.
    return frequency_report_csv(rank_conditions(store_->all_specs(), top_n));
}

CheckSummary Engine::check(const std::filesystem::path& target_path,
                           const std::string& function_name,
                           const std::filesystem::path& report_path) {
    if (!std::filesystem::exists(target_path))
        throw ConfigError("target not found: " + target_path.string());
    ParsedSource parsed = parse_solidity(read_file(target_path));
    for (const auto& w : parsed.warnings) log("WARN " + target_path.filename().string() + " " + w);

    ContractMeta meta;
    meta.address = target_path.filename().string();
    meta.name = target_path.stem().string();
    meta.source_path = target_path.string();
    meta.category =
        categorize(tokenize_contract_name(meta.name, categories_), categories_).value_or("");
    meta.solidity_major = parsed.pragma_major;

    auto entries = enumerate_public_functions(parsed);
    if (!function_name.empty()) {
        std::vector<FunctionEntry> onlyfn;
        for (const auto& e : entries)
            if (e.name == function_name) onlyfn.push_back(e);
        if (onlyfn.empty())
            throw ConfigError("no public or external function named '" + function_name + "' in " +
                              target_path.string());
        entries = std::move(onlyfn);
    }

    AuditOptions opts;
    opts.retrieval_k = cfg_.retrieval_k;
    opts.min_similarity = cfg_.min_similarity;
    opts.include_writers = cfg_.include_writers;
    opts.aggregate_templates = cfg_.aggregate_templates;

    CheckSummary sum;
    for (const auto& entry : entries) {
        FunctionReport row;
        row.function_id = function_record_id(meta.address, entry.name);
        row.contract_name = entry.contract_name;
        row.function_name = entry.name;
        row.source_path = meta.source_path;

        Session session;
        try {
            auto ctx_or =
                build_audit_context(*store_, meta, parsed, entry, *miner_backend_, dict_, opts,
                                    session);
            if (std::holds_alternative<NoReference>(ctx_or)) {
                row.status = "no_reference";
                row.detail = std::get<NoReference>(ctx_or).reason;
            } else {
                const auto& ctx = std::get<AuditContext>(ctx_or);
                AuditOutcome outcome = audit(ctx, *checker_backend_, session, opts);
                row.status =
                    outcome.status == AuditOutcome::Status::kOk ? "ok" : "audit_failed";
                row.verdicts = std::move(outcome.verdicts);
                row.findings = std::move(outcome.findings);
                row.detail = std::move(outcome.detail);
            }
        } catch (const GatewayError& e) {
            row.status = "audit_failed";
            row.detail = std::string("backend: ") + e.what();
        }
        row.tokens = session.tokens_in + session.tokens_out;
        row.ms = session.wall_time_ms;
        log("CHECK " + entry.name + " " + row.status +
            " findings=" + std::to_string(row.findings.size()));
        sum.reports.push_back(std::move(row));
    }

    if (!report_path.empty()) atomic_write_file(report_path, report_to_json(sum.reports).dump(2) + "\n");
    for (const auto& r : sum.reports)
        if (r.status == "audit_failed") sum.status = RunStatus::kPartial;
    return sum;
}

EvalSummary Engine::eval(const std::filesystem::path& report_path,
                         const std::filesystem::path& labels_path) const {
    if (!std::filesystem::exists(report_path))
        throw ConfigError("report not found: " + report_path.string());
    if (!std::filesystem::exists(labels_path))
        throw ConfigError("labels not found: " + labels_path.string());

    nlohmann::json report;
    try {
        report = nlohmann::json::parse(read_file(report_path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("report is not valid JSON: " + std::string(e.what()));
    }
    LabelSet labels = LabelSet::load_jsonl(labels_path);

    std::filesystem::path report_dir = report_path.parent_path();
    auto loader = [&](const std::string& path) -> std::optional<std::string> {
        std::filesystem::path p = path;
        if (p.is_relative() && !std::filesystem::exists(p)) p = report_dir / path;
        if (!std::filesystem::exists(p)) return std::nullopt;
        return read_file(p);
    };
    auto predictions = map_report_to_functions(report, loader);

    EvalSummary out;
    out.metrics = score(predictions, labels);
    out.csv = metrics_csv(out.metrics);
    return out;
}

std::string Engine::db_stats() const { return store_->stats().dump(2) + "\n"; }

}  // namespace logicscan
