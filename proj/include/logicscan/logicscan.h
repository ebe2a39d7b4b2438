#ifndef LOGICSCAN_H
#define LOGICSCAN_H

/* C interface to the contract auditing engine. Every function is
 * synchronous and thread-compatible: one engine may be shared across
 * threads for queries, but mine/check runs mutate the store and should not
 * overlap. Strings returned through char** out-parameters are heap
 * allocations owned by the caller; release them with logicscan_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum logicscan_status {
    LOGICSCAN_OK = 0,
    /* The command finished but some unit of work was skipped or failed
     * (mining skips, audit failures). Details are in the logs/report. */
    LOGICSCAN_PARTIAL = 1,
    LOGICSCAN_ERR_CONFIG = 2,  /* bad config, bad arguments, missing inputs */
    LOGICSCAN_ERR_PARSE = 3,   /* target source could not be parsed */
    LOGICSCAN_ERR_IO = 4,
    LOGICSCAN_ERR_BACKEND = 5, /* model backend unreachable or refused */
    LOGICSCAN_ERR_INTERNAL = 6
} logicscan_status;

const char* logicscan_status_name(logicscan_status status);
const char* logicscan_version(void);

void logicscan_string_free(char* s);

/* --- Business Specification Language ---------------------------------- */

typedef struct logicscan_bsl logicscan_bsl;

/* Strict parse. On success *out holds the spec; on failure *out is NULL and,
 * when error_message is non-NULL, *error_message carries the diagnostic. */
logicscan_status logicscan_bsl_parse(const char* text, logicscan_bsl** out,
                                     char** error_message);
/* Canonical rendering: order(check[a, b], action) */
char* logicscan_bsl_print(const logicscan_bsl* spec);
size_t logicscan_bsl_check_count(const logicscan_bsl* spec);
void logicscan_bsl_free(logicscan_bsl* spec);

/* --- Engine ------------------------------------------------------------ */

typedef struct logicscan_engine logicscan_engine;

typedef void (*logicscan_log_fn)(const char* line, void* user_data);

typedef struct logicscan_engine_options {
    /* Replay every model exchange from this script; the configured backends
     * are never contacted. NULL = use the configured backends. */
    const char* replay_script;
    /* Append every model exchange of this run to this script file. */
    const char* record_script;
    logicscan_log_fn log;
    void* log_user_data;
} logicscan_engine_options;

/* config_path NULL or empty loads the built-in defaults. On failure returns
 * the status and, when error_message is non-NULL, the diagnostic. */
logicscan_status logicscan_engine_open(const char* config_path,
                                       const logicscan_engine_options* options,
                                       logicscan_engine** out, char** error_message);
void logicscan_engine_close(logicscan_engine* engine);
/* Message of the last failed call on this engine; empty when none. The
 * pointer stays valid until the next call on the same engine. */
const char* logicscan_engine_last_error(const logicscan_engine* engine);

logicscan_status logicscan_corpus_filter(logicscan_engine* engine, const char* corpus_path,
                                         double percentile, const char* out_path);
logicscan_status logicscan_corpus_categorize(logicscan_engine* engine, const char* corpus_path,
                                             const char* out_path);

/* Mines all public functions of the corpus into the store. Out-parameters
 * are optional. LOGICSCAN_PARTIAL when anything was skipped. */
logicscan_status logicscan_mine(logicscan_engine* engine, const char* corpus_path,
                                int* mined_out, int* skipped_out);

/* Condition-frequency CSV over the stored specs, for dictionary curation. */
logicscan_status logicscan_dict_rank(logicscan_engine* engine, size_t top_n, char** csv_out);

/* Audits target_path (one function when function_name is non-NULL and
 * non-empty, all public functions otherwise). Writes the JSON report to
 * report_path when given; report_json_out / report_text_out optionally
 * receive the same report as a JSON string and a human-readable rendering.
 * LOGICSCAN_PARTIAL when any function came back audit-failed. */
logicscan_status logicscan_check(logicscan_engine* engine, const char* target_path,
                                 const char* function_name, const char* report_path,
                                 char** report_json_out, char** report_text_out);

/* Scores a report file against a JSONL label set. csv_out receives the
 * metrics table. */
logicscan_status logicscan_eval(logicscan_engine* engine, const char* report_path,
                                const char* labels_path, char** csv_out);

logicscan_status logicscan_db_stats(logicscan_engine* engine, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* LOGICSCAN_H */
