// Command-line front end. Links the shared library through the public C
// interface only, so it doubles as a smoke test of that surface.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "logicscan/logicscan.h"

namespace {

void log_to_stderr(const char* line, void*) { std::fprintf(stderr, "%s\n", line); }

int exit_code_for(logicscan_status status) {
    switch (status) {
        case LOGICSCAN_OK: return 0;
        case LOGICSCAN_PARTIAL: return 1;
        case LOGICSCAN_ERR_CONFIG:
        case LOGICSCAN_ERR_PARSE:
        case LOGICSCAN_ERR_IO: return 2;
        default: return 1;
    }
}

void print_owned(char* s) {
    if (!s) return;
    std::fputs(s, stdout);
    logicscan_string_free(s);
}

struct EngineHandle {
    logicscan_engine* engine = nullptr;
    ~EngineHandle() { logicscan_engine_close(engine); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contract business-logic auditor"};
    app.require_subcommand(1);
    // Global options may appear after the subcommand, e.g.
    // `logicscan check t.sol --config run.cfg --replay script.json`.
    app.fallthrough();

    std::string config_path;
    std::string replay_script;
    std::string record_script;
    app.add_option("--config", config_path, "Configuration file (key = value lines)");
    app.add_option("--replay", replay_script,
                   "Answer every model request from this recorded script");
    app.add_option("--record", record_script, "Record every model exchange to this script");

    auto* corpus = app.add_subcommand("corpus", "Corpus filtering and categorization");
    corpus->require_subcommand(1);

    std::string filter_corpus, filter_out = "filtered.jsonl";
    double percentile = 0.30;
    auto* filter = corpus->add_subcommand("filter", "Keep contracts in the top percentile of "
                                                    "both age and transaction count");
    filter->add_option("corpus", filter_corpus, "Corpus file or directory")->required();
    filter->add_option("--percentile", percentile, "Fraction in (0, 1]")
        ->capture_default_str();
    filter->add_option("--out", filter_out, "Output JSONL path")->capture_default_str();

    std::string cat_corpus, cat_out = "categorized.jsonl";
    auto* categorize = corpus->add_subcommand("categorize", "Label contracts by name tokens");
    categorize->add_option("corpus", cat_corpus, "Corpus file or directory")->required();
    categorize->add_option("--out", cat_out, "Output JSONL path")->capture_default_str();

    std::string mine_corpus;
    auto* mine = app.add_subcommand("mine", "Mine reference specs into the store");
    mine->add_option("corpus", mine_corpus, "Corpus file or directory")->required();

    auto* dict = app.add_subcommand("dict", "Synonym dictionary curation helpers");
    dict->require_subcommand(1);
    std::size_t top_n = 2000;
    auto* rank = dict->add_subcommand("rank", "Condition-frequency CSV over the store");
    rank->add_option("--top", top_n, "Number of rows")->capture_default_str();

    std::string check_target, check_fn, check_report = "report.json";
    bool check_json = false;
    auto* check = app.add_subcommand("check", "Audit a target contract against the store");
    check->add_option("target", check_target, "Solidity source file")->required();
    check->add_option("--fn", check_fn, "Audit only this function");
    check->add_option("--report", check_report, "Report output path")->capture_default_str();
    check->add_flag("--json", check_json, "Print the JSON report instead of text");

    std::string eval_report, eval_labels;
    auto* eval = app.add_subcommand("eval", "Score a report against a label set");
    eval->add_option("report", eval_report, "Report JSON path")->required();
    eval->add_option("labels", eval_labels, "Labels JSONL path")->required();

    auto* db = app.add_subcommand("db", "Store inspection");
    db->require_subcommand(1);
    auto* stats = db->add_subcommand("stats", "Print store statistics as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        // Usage errors exit 2 with the synopsis on standard error.
        std::fprintf(stderr, "error: %s\n", e.what());
        std::fputs(app.help().c_str(), stderr);
        return 2;
    }

    logicscan_engine_options options{};
    options.replay_script = replay_script.empty() ? nullptr : replay_script.c_str();
    options.record_script = record_script.empty() ? nullptr : record_script.c_str();
    options.log = log_to_stderr;

    EngineHandle handle;
    char* open_error = nullptr;
    logicscan_status status = logicscan_engine_open(
        config_path.empty() ? nullptr : config_path.c_str(), &options, &handle.engine,
        &open_error);
    if (status != LOGICSCAN_OK) {
        std::fprintf(stderr, "error: %s\n", open_error ? open_error : "engine open failed");
        logicscan_string_free(open_error);
        return exit_code_for(status);
    }

    if (filter->parsed()) {
        status = logicscan_corpus_filter(handle.engine, filter_corpus.c_str(), percentile,
                                         filter_out.c_str());
    } else if (categorize->parsed()) {
        status = logicscan_corpus_categorize(handle.engine, cat_corpus.c_str(), cat_out.c_str());
    } else if (mine->parsed()) {
        int mined = 0, skipped = 0;
        status = logicscan_mine(handle.engine, mine_corpus.c_str(), &mined, &skipped);
        if (status == LOGICSCAN_OK || status == LOGICSCAN_PARTIAL)
            std::printf("mined %d function(s), skipped %d\n", mined, skipped);
    } else if (rank->parsed()) {
        char* csv = nullptr;
        status = logicscan_dict_rank(handle.engine, top_n, &csv);
        print_owned(csv);
    } else if (check->parsed()) {
        char* rendered = nullptr;
        status = logicscan_check(handle.engine, check_target.c_str(),
                                 check_fn.empty() ? nullptr : check_fn.c_str(),
                                 check_report.c_str(), check_json ? &rendered : nullptr,
                                 check_json ? nullptr : &rendered);
        if (status == LOGICSCAN_OK || status == LOGICSCAN_PARTIAL) print_owned(rendered);
    } else if (eval->parsed()) {
        char* csv = nullptr;
        status = logicscan_eval(handle.engine, eval_report.c_str(), eval_labels.c_str(), &csv);
        print_owned(csv);
    } else if (stats->parsed()) {
        char* json = nullptr;
        status = logicscan_db_stats(handle.engine, &json);
        print_owned(json);
    }

    if (status != LOGICSCAN_OK && status != LOGICSCAN_PARTIAL)
        std::fprintf(stderr, "error: %s\n", logicscan_engine_last_error(handle.engine));
    return exit_code_for(status);
}
