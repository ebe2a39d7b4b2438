#include "logicscan/logicscan.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "bsl.hpp"
#include "engine.hpp"
#include "fsutil.hpp"
#include "gateway.hpp"
#include "solidity.hpp"
#include "store.hpp"

using namespace logicscan;

struct logicscan_bsl {
    BslSpec spec;
};

struct logicscan_engine {
    std::unique_ptr<Engine> engine;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_out(char** slot, const std::string& value) {
    if (slot) *slot = dup_string(value);
}

// Maps the library's exception hierarchy onto the C status codes. `message`
// receives the diagnostic for logicscan_engine_last_error.
template <typename Fn>
logicscan_status guarded(std::string& message, Fn&& fn) {
    try {
        message.clear();
        return fn();
    } catch (const ConfigError& e) {
        message = e.what();
        return LOGICSCAN_ERR_CONFIG;
    } catch (const SolidityParseError& e) {
        message = e.what();
        return LOGICSCAN_ERR_PARSE;
    } catch (const IoError& e) {
        message = e.what();
        return LOGICSCAN_ERR_IO;
    } catch (const GatewayError& e) {
        message = e.what();
        return LOGICSCAN_ERR_BACKEND;
    } catch (const std::exception& e) {
        message = e.what();
        return LOGICSCAN_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* logicscan_status_name(logicscan_status status) {
    switch (status) {
        case LOGICSCAN_OK: return "ok";
        case LOGICSCAN_PARTIAL: return "partial";
        case LOGICSCAN_ERR_CONFIG: return "config_error";
        case LOGICSCAN_ERR_PARSE: return "parse_error";
        case LOGICSCAN_ERR_IO: return "io_error";
        case LOGICSCAN_ERR_BACKEND: return "backend_error";
        case LOGICSCAN_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* logicscan_version(void) { return "1.0.0"; }

void logicscan_string_free(char* s) { std::free(s); }

logicscan_status logicscan_bsl_parse(const char* text, logicscan_bsl** out,
                                     char** error_message) {
    if (!out) return LOGICSCAN_ERR_CONFIG;
    *out = nullptr;
    if (error_message) *error_message = nullptr;
    if (!text) {
        set_out(error_message, "text is NULL");
        return LOGICSCAN_ERR_CONFIG;
    }
    BslParseResult result = parse_bsl(text);
    if (std::holds_alternative<BslSyntaxError>(result)) {
        set_out(error_message, std::get<BslSyntaxError>(result).message());
        return LOGICSCAN_ERR_PARSE;
    }
    *out = new logicscan_bsl{std::get<BslSpec>(std::move(result))};
    return LOGICSCAN_OK;
}

char* logicscan_bsl_print(const logicscan_bsl* spec) {
    if (!spec) return nullptr;
    return dup_string(print_bsl(spec->spec));
}

size_t logicscan_bsl_check_count(const logicscan_bsl* spec) {
    return spec ? spec->spec.checks.size() : 0;
}

void logicscan_bsl_free(logicscan_bsl* spec) { delete spec; }

logicscan_status logicscan_engine_open(const char* config_path,
                                       const logicscan_engine_options* options,
                                       logicscan_engine** out, char** error_message) {
    if (!out) return LOGICSCAN_ERR_CONFIG;
    *out = nullptr;
    if (error_message) *error_message = nullptr;

    std::string message;
    logicscan_status status = guarded(message, [&]() -> logicscan_status {
        Config cfg;
        if (config_path && *config_path) cfg = Config::load(config_path);

        EngineOverrides ov;
        Engine::LogFn log;
        if (options) {
            if (options->replay_script && *options->replay_script)
                ov.replay_script = options->replay_script;
            if (options->record_script && *options->record_script)
                ov.record_script = options->record_script;
            if (options->log) {
                logicscan_log_fn fn = options->log;
                void* user = options->log_user_data;
                log = [fn, user](const std::string& line) { fn(line.c_str(), user); };
            }
        }
        auto handle = std::make_unique<logicscan_engine>();
        handle->engine = std::make_unique<Engine>(std::move(cfg), std::move(ov), std::move(log));
        *out = handle.release();
        return LOGICSCAN_OK;
    });
    if (status != LOGICSCAN_OK) set_out(error_message, message);
    return status;
}

void logicscan_engine_close(logicscan_engine* engine) { delete engine; }

const char* logicscan_engine_last_error(const logicscan_engine* engine) {
    return engine ? engine->last_error.c_str() : "";
}

logicscan_status logicscan_corpus_filter(logicscan_engine* engine, const char* corpus_path,
                                         double percentile, const char* out_path) {
    if (!engine || !corpus_path || !out_path) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        engine->engine->corpus_filter(corpus_path, percentile, out_path);
        return LOGICSCAN_OK;
    });
}

logicscan_status logicscan_corpus_categorize(logicscan_engine* engine, const char* corpus_path,
                                             const char* out_path) {
    if (!engine || !corpus_path || !out_path) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        engine->engine->corpus_categorize(corpus_path, out_path);
        return LOGICSCAN_OK;
    });
}

logicscan_status logicscan_mine(logicscan_engine* engine, const char* corpus_path,
                                int* mined_out, int* skipped_out) {
    if (!engine || !corpus_path) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        MineSummary sum = engine->engine->mine(corpus_path);
        if (mined_out) *mined_out = sum.mined;
        if (skipped_out) *skipped_out = sum.skipped + sum.parse_failures;
        return sum.status == RunStatus::kOk ? LOGICSCAN_OK : LOGICSCAN_PARTIAL;
    });
}

logicscan_status logicscan_dict_rank(logicscan_engine* engine, size_t top_n, char** csv_out) {
    if (!engine) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        set_out(csv_out, engine->engine->dict_rank(top_n));
        return LOGICSCAN_OK;
    });
}

logicscan_status logicscan_check(logicscan_engine* engine, const char* target_path,
                                 const char* function_name, const char* report_path,
                                 char** report_json_out, char** report_text_out) {
    if (!engine || !target_path) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        CheckSummary sum = engine->engine->check(
            target_path, function_name ? function_name : "", report_path ? report_path : "");
        if (report_json_out) set_out(report_json_out, report_to_json(sum.reports).dump(2) + "\n");
        if (report_text_out) set_out(report_text_out, report_to_text(sum.reports));
        return sum.status == RunStatus::kOk ? LOGICSCAN_OK : LOGICSCAN_PARTIAL;
    });
}

logicscan_status logicscan_eval(logicscan_engine* engine, const char* report_path,
                                const char* labels_path, char** csv_out) {
    if (!engine || !report_path || !labels_path) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        EvalSummary sum = engine->engine->eval(report_path, labels_path);
        set_out(csv_out, sum.csv);
        return LOGICSCAN_OK;
    });
}

logicscan_status logicscan_db_stats(logicscan_engine* engine, char** json_out) {
    if (!engine) return LOGICSCAN_ERR_CONFIG;
    return guarded(engine->last_error, [&]() -> logicscan_status {
        set_out(json_out, engine->engine->db_stats());
        return LOGICSCAN_OK;
    });
}

}  // extern "C"
