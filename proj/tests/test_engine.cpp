#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "engine.hpp"
#include "fsutil.hpp"
#include "lending.hpp"
#include "oracles.hpp"
#include "scriptgen.hpp"
#include "seed_data.hpp"

using namespace logicscan;
using nlohmann::json;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("engine_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

Config base_config(const std::filesystem::path& store_dir) {
    Config cfg;
    cfg.store_dir = store_dir;
    return cfg;  // sentinel backends, deterministic embedder, seed data
}

struct LogCapture {
    std::vector<std::string> lines;
    Engine::LogFn fn() {
        return [this](const std::string& line) { lines.push_back(line); };
    }
    bool contains(const std::string& needle) const {
        for (const auto& l : lines)
            if (l.find(needle) != std::string::npos) return true;
        return false;
    }
};

using fixtures::euler_audit_plan;
using fixtures::write_lending_mine_script;

}  // namespace

TEST_CASE("corpus filtering writes the surviving rows atomically") {
    TempDir tmp;
    LogCapture logs;
    Engine engine(base_config(tmp.path / "store"), {}, logs.fn());

    auto out = tmp.path / "filtered.jsonl";
    engine.corpus_filter(oracle::fixture_path("lending"), 0.4, out);

    auto metas = load_corpus(oracle::fixture_path("lending/corpus.jsonl"));
    auto expected = filter_contracts(metas, 0.4);
    auto written = load_corpus(out);
    REQUIRE(written.size() == expected.size());
    for (std::size_t i = 0; i < written.size(); ++i) CHECK(written[i] == expected[i]);
    CHECK(logs.contains("FILTER kept " + std::to_string(expected.size()) + " of 5"));
}

TEST_CASE("corpus categorization labels every lending fixture") {
    TempDir tmp;
    LogCapture logs;
    Engine engine(base_config(tmp.path / "store"), {}, logs.fn());

    auto out = tmp.path / "categorized.jsonl";
    engine.corpus_categorize(oracle::fixture_path("lending"), out);

    auto written = load_corpus(out);
    REQUIRE(written.size() == 5);
    for (const auto& meta : written) CHECK(meta.category == "Lending");
    CHECK(logs.contains("CATEGORIZE labeled 5 of 5"));
}

TEST_CASE("mining a scripted corpus fills the store and reports clean status") {
    TempDir tmp;
    auto script = write_lending_mine_script(tmp.path / "mine.json");

    Config cfg = base_config(tmp.path / "store");
    cfg.miner_backend = "scripted";
    cfg.miner_script = script;

    LogCapture logs;
    Engine engine(cfg, {}, logs.fn());
    MineSummary sum = engine.mine(oracle::fixture_path("lending"));

    CHECK(sum.mined == 5);
    CHECK(sum.skipped == 0);
    CHECK(sum.parse_failures == 0);
    CHECK(sum.status == RunStatus::kOk);
    CHECK(engine.store().size() == 5);
    CHECK(logs.contains("MINE LendingPoolAlpha withdrawCollateral Success attempts=0"));
    CHECK(logs.contains("MINE MarginPoolEpsilon withdraw Success attempts=0"));
    CHECK(std::filesystem::exists(tmp.path / "store" / "manifest.json"));
    CHECK(std::filesystem::exists(tmp.path / "store" / "vectors.bin"));

    json stats = json::parse(engine.db_stats());
    CHECK(stats["records"] == 5);
    CHECK(stats["categories"]["Lending"] == 5);
    CHECK(stats["solidity_versions"]["0.8"] == 5);

    std::string csv = engine.dict_rank(10);
    CHECK(csv.find("balance_ge_amount,3") != std::string::npos);
    CHECK(csv.find("hf_ge_threshold,2") != std::string::npos);
    CHECK(csv.find("amount_gt_zero,2") != std::string::npos);
}

TEST_CASE("mining runs identically under a parallelism bound above one") {
    TempDir tmp;
    auto script = write_lending_mine_script(tmp.path / "mine.json");
    Config cfg = base_config(tmp.path / "store");
    cfg.miner_backend = "scripted";
    cfg.miner_script = script;
    cfg.parallelism = 3;

    Engine engine(cfg, {}, [](const std::string&) {});
    MineSummary sum = engine.mine(oracle::fixture_path("lending"));
    CHECK(sum.mined == 5);
    CHECK(sum.status == RunStatus::kOk);
    CHECK(engine.store().size() == 5);
}

TEST_CASE("an unreachable backend turns mining into skips, not a crash") {
    TempDir tmp;
    Config cfg = base_config(tmp.path / "store");  // sentinel miner

    LogCapture logs;
    Engine engine(cfg, {}, logs.fn());
    MineSummary sum = engine.mine(oracle::fixture_path("lending"));

    CHECK(sum.mined == 0);
    CHECK(sum.skipped == 5);
    CHECK(sum.status == RunStatus::kPartial);
    CHECK(engine.store().size() == 0);
    CHECK(logs.contains("Skipped attempts=0 reason=\"backend: sentinel backend contacted\""));
}

TEST_CASE("unreadable or unparseable corpus sources are counted, not fatal") {
    TempDir tmp;
    std::filesystem::create_directories(tmp.path / "corpus");
    {
        std::ofstream bad(tmp.path / "corpus" / "bad.sol");
        bad << "pragma solidity ^0.8.0;\ncontract Broken {\n";  // unbalanced
    }
    {
        std::ofstream jsonl(tmp.path / "corpus" / "corpus.jsonl");
        jsonl << R"({"address": "0x01", "name": "GhostPool", "deployed_days": 1, "tx_count": 1, "source_path": "ghost.sol"})"
              << "\n"
              << R"({"address": "0x02", "name": "BrokenPool", "deployed_days": 1, "tx_count": 1, "source_path": "bad.sol"})"
              << "\n";
    }

    LogCapture logs;
    Engine engine(base_config(tmp.path / "store"), {}, logs.fn());
    MineSummary sum = engine.mine(tmp.path / "corpus");

    CHECK(sum.mined == 0);
    CHECK(sum.skipped == 0);
    CHECK(sum.parse_failures == 2);
    CHECK(sum.status == RunStatus::kPartial);
    CHECK(logs.contains("SKIP GhostPool"));
    CHECK(logs.contains("SKIP BrokenPool parse error:"));
}

TEST_CASE("corpus path errors are configuration errors") {
    TempDir tmp;
    Engine engine(base_config(tmp.path / "store"), {}, [](const std::string&) {});
    CHECK_THROWS_AS(engine.mine(tmp.path / "missing-dir"), ConfigError);
    std::filesystem::create_directories(tmp.path / "empty-dir");
    CHECK_THROWS_WITH_AS(engine.mine(tmp.path / "empty-dir"),
                         ("no corpus.jsonl or corpus.csv in " +
                          (tmp.path / "empty-dir").string()).c_str(),
                         ConfigError);
}

TEST_CASE("check audits a scripted target end to end") {
    TempDir tmp;
    auto store_dir = tmp.path / "store";

    {
        Config mine_cfg = base_config(store_dir);
        mine_cfg.miner_backend = "scripted";
        mine_cfg.miner_script = write_lending_mine_script(tmp.path / "mine.json");
        Engine miner(mine_cfg, {}, [](const std::string&) {});
        REQUIRE(miner.mine(oracle::fixture_path("lending")).mined == 5);
    }

    Config cfg = base_config(store_dir);
    scriptgen::AuditScriptPlan plan = euler_audit_plan(store_dir, cfg);
    REQUIRE(plan.ctx.templates.size() == 5);
    REQUIRE(plan.ctx.checklist.invariants.size() == 2);

    ScriptedBackend script;
    scriptgen::script_check(script, plan);
    auto script_path = tmp.path / "check.json";
    atomic_write_file(script_path, script.to_json_text());

    EngineOverrides overrides;
    overrides.replay_script = script_path;
    LogCapture logs;
    Engine engine(cfg, overrides, logs.fn());

    auto report_path = tmp.path / "report.json";
    CheckSummary sum =
        engine.check(oracle::fixture_path("euler.sol"), "donateToReserves", report_path);

    CHECK(sum.status == RunStatus::kOk);
    REQUIRE(sum.reports.size() == 1);
    const FunctionReport& row = sum.reports[0];
    CHECK(row.status == "ok");
    CHECK(row.contract_name == "DonationPool");
    CHECK(row.function_name == "donateToReserves");
    CHECK(row.tokens > 0);
    REQUIRE(row.verdicts.size() == 2);
    CHECK(row.verdicts[0].invariant == "balance_ge_amount");
    CHECK(row.verdicts[0].status == VerdictStatus::kEnforced);
    CHECK(row.verdicts[1].invariant == "health_factor_ge_threshold");
    CHECK(row.verdicts[1].status == VerdictStatus::kMissing);
    REQUIRE(row.findings.size() == 1);
    CHECK(row.findings[0].invariant == "health_factor_ge_threshold");
    CHECK(row.findings[0].classification == FindingClass::kReviewWorthy);
    CHECK(row.findings[0].supporting_template_ids.size() == 3);
    CHECK(logs.contains("CHECK donateToReserves ok findings=1"));

    REQUIRE(std::filesystem::exists(report_path));
    json report = json::parse(read_file(report_path));
    REQUIRE(report.is_array());
    REQUIRE(report.size() == 1);
    CHECK(report[0]["status"] == "ok");
    CHECK(report[0]["findings"][0]["invariant"] == "health_factor_ge_threshold");

    // The replay override satisfied every request; the configured sentinel
    // backends were never reachable, so the run made no model traffic.
    CHECK(cfg.miner_backend == "sentinel");
    CHECK(cfg.checker_backend == "sentinel");
}

TEST_CASE("check reports no_reference rows against an empty store") {
    TempDir tmp;
    Config cfg = base_config(tmp.path / "store");

    // Script only the describe turn per public function; retrieval then
    // comes up empty and no audit phases run.
    ParsedSource parsed = parse_solidity(read_file(oracle::fixture_path("euler.sol")));
    ScriptedBackend script;
    for (const auto& entry : enumerate_public_functions(parsed)) {
        ExpandedFunction expanded = expand_call_chain(parsed, entry.name);
        scriptgen::SessionScript s(script);
        s.reply(TemplateId::kR1FuncDesc,
                {{"name", entry.name},
                 {"code", expanded.expanded_source},
                 {"category", ""}},
                "a functional description");
    }
    auto script_path = tmp.path / "r1only.json";
    atomic_write_file(script_path, script.to_json_text());

    EngineOverrides overrides;
    overrides.replay_script = script_path;
    Engine engine(cfg, overrides, [](const std::string&) {});

    CheckSummary sum = engine.check(oracle::fixture_path("euler.sol"), "", tmp.path / "r.json");
    REQUIRE(sum.reports.size() == 3);
    for (const auto& row : sum.reports) {
        CHECK(row.status == "no_reference");
        CHECK(row.detail.find("no reference template") != std::string::npos);
        CHECK(row.findings.empty());
    }
    CHECK(sum.status == RunStatus::kOk);
}

TEST_CASE("backend failure during check yields audit_failed rows and partial status") {
    TempDir tmp;
    Config cfg = base_config(tmp.path / "store");  // sentinel everywhere
    Engine engine(cfg, {}, [](const std::string&) {});

    auto report_path = tmp.path / "report.json";
    CheckSummary sum =
        engine.check(oracle::fixture_path("euler.sol"), "donateToReserves", report_path);

    CHECK(sum.status == RunStatus::kPartial);
    REQUIRE(sum.reports.size() == 1);
    CHECK(sum.reports[0].status == "audit_failed");
    CHECK(sum.reports[0].detail == "backend: sentinel backend contacted");
    CHECK(std::filesystem::exists(report_path));
}

TEST_CASE("check validates its target arguments") {
    TempDir tmp;
    Engine engine(base_config(tmp.path / "store"), {}, [](const std::string&) {});
    CHECK_THROWS_AS(engine.check(tmp.path / "missing.sol", "", ""), ConfigError);
    CHECK_THROWS_WITH_AS(
        engine.check(oracle::fixture_path("euler.sol"), "decreaseBalance", ""),
        ("no public or external function named 'decreaseBalance' in " +
         oracle::fixture_path("euler.sol").string()).c_str(),
        ConfigError);
}

TEST_CASE("eval scores a written report against labels") {
    TempDir tmp;
    auto store_dir = tmp.path / "store";
    {
        Config mine_cfg = base_config(store_dir);
        mine_cfg.miner_backend = "scripted";
        mine_cfg.miner_script = write_lending_mine_script(tmp.path / "mine.json");
        Engine miner(mine_cfg, {}, [](const std::string&) {});
        REQUIRE(miner.mine(oracle::fixture_path("lending")).mined == 5);
    }
    Config cfg = base_config(store_dir);
    scriptgen::AuditScriptPlan plan = euler_audit_plan(store_dir, cfg);
    ScriptedBackend script;
    scriptgen::script_check(script, plan);
    auto script_path = tmp.path / "check.json";
    atomic_write_file(script_path, script.to_json_text());

    EngineOverrides overrides;
    overrides.replay_script = script_path;
    Engine engine(cfg, overrides, [](const std::string&) {});
    auto report_path = tmp.path / "report.json";
    engine.check(oracle::fixture_path("euler.sol"), "donateToReserves", report_path);

    EvalSummary eval =
        engine.eval(report_path, oracle::fixture_path("labels/donation_pool.jsonl"));
    CHECK(eval.metrics.tp == 1);
    CHECK(eval.metrics.fp == 0);
    CHECK(eval.metrics.fn == 0);
    CHECK(eval.metrics.tn == 2);
    CHECK(eval.csv.find("1,0,0,2,100.0,100.0,100.0,0.0") != std::string::npos);
}

TEST_CASE("eval rejects missing or malformed inputs") {
    TempDir tmp;
    Engine engine(base_config(tmp.path / "store"), {}, [](const std::string&) {});
    auto labels = oracle::fixture_path("labels/donation_pool.jsonl");

    CHECK_THROWS_AS(engine.eval(tmp.path / "missing.json", labels), ConfigError);

    auto report = tmp.path / "report.json";
    atomic_write_file(report, "[]");
    CHECK_THROWS_AS(engine.eval(report, tmp.path / "missing.jsonl"), ConfigError);

    atomic_write_file(report, "not json");
    try {
        engine.eval(report, labels);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("report is not valid JSON") == 0);
    }
}

TEST_CASE("recorded runs replay to an identical store") {
    TempDir tmp;
    auto mine_script = write_lending_mine_script(tmp.path / "mine.json");
    auto record_path = tmp.path / "recorded.json";

    Config cfg1 = base_config(tmp.path / "store1");
    cfg1.miner_backend = "scripted";
    cfg1.miner_script = mine_script;
    EngineOverrides record;
    record.record_script = record_path;
    Engine first(cfg1, record, [](const std::string&) {});
    MineSummary sum1 = first.mine(oracle::fixture_path("lending"));
    REQUIRE(sum1.mined == 5);
    REQUIRE(std::filesystem::exists(record_path));

    Config cfg2 = base_config(tmp.path / "store2");  // sentinel: replay must win
    EngineOverrides replay;
    replay.replay_script = record_path;
    Engine second(cfg2, replay, [](const std::string&) {});
    MineSummary sum2 = second.mine(oracle::fixture_path("lending"));
    CHECK(sum2.mined == 5);

    auto bytes = [](const std::filesystem::path& p) { return read_file(p); };
    CHECK(bytes(tmp.path / "store1" / "manifest.json") ==
          bytes(tmp.path / "store2" / "manifest.json"));
    CHECK(bytes(tmp.path / "store1" / "vectors.bin") ==
          bytes(tmp.path / "store2" / "vectors.bin"));
}

TEST_CASE("the shipped data files stay in sync with the built-in seeds") {
    auto data_dir = oracle::fixture_path("../../data");
    json cat_file = json::parse(read_file(data_dir / "categories.json"));
    json cat_seed = json::parse(std::string(kSeedCategoryMapJson));
    CHECK(cat_file == cat_seed);

    json dict_file = json::parse(read_file(data_dir / "synonyms.json"));
    json dict_seed = json::parse(std::string(kSeedDictionaryJson));
    CHECK(dict_file == dict_seed);
}
