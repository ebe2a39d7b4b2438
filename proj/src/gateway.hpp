#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logicscan {

enum class TemplateId {
    kR1FuncDesc,
    kR2LogicSummary,
    kR3BslGen,
    kR4Repair,
    kC1Induction,
    kC2Verification,
    kC3Deviation,
};

// Wire names, also used as script-file keys.
std::string_view template_id_name(TemplateId id);
std::optional<TemplateId> template_id_from_name(std::string_view name);

struct PromptTemplate {
    TemplateId id;
    std::string text;  // {placeholder} slots; {{ and }} are literal braces
};

const PromptTemplate& builtin_template(TemplateId id);

using Bindings = std::map<std::string, std::string>;

struct GatewayError : std::runtime_error {
    explicit GatewayError(const std::string& what) : std::runtime_error(what) {}
};
struct TemplateError : GatewayError {
    explicit TemplateError(const std::string& what) : GatewayError(what) {}
};
struct BackendUnavailable : GatewayError {
    explicit BackendUnavailable(const std::string& what) : GatewayError(what) {}
};
struct ScriptMiss : GatewayError {
    explicit ScriptMiss(const std::string& what) : GatewayError(what) {}
};

// Fails before any backend contact when a placeholder has no binding.
std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings);

// Stable across runs and platforms; script files are keyed by it.
std::string prompt_digest(std::string_view rendered_prompt);

struct Turn {
    std::string role;  // "user" | "assistant"
    std::string text;
    TemplateId template_id = TemplateId::kR1FuncDesc;  // template behind this turn
};

// One conversation plus its cost accounting. Single-owner: a session is
// never shared across threads.
struct Session {
    std::vector<Turn> transcript;
    std::uint64_t tokens_in = 0;
    std::uint64_t tokens_out = 0;
    std::uint64_t wall_time_ms = 0;
};

// Digest of the full request payload: every transcript turn plus the new
// user prompt. Context-dependent templates (R2/R3 bind no per-function data)
// render identically across functions, so keying scripts on the prompt alone
// would collide; the transcript is what actually distinguishes requests.
std::string request_digest(const Session& session, std::string_view rendered_prompt);

struct Completion {
    std::string text;
    std::uint64_t tokens_in = 0;
    std::uint64_t tokens_out = 0;
    std::uint64_t elapsed_ms = 0;
};

class Backend {
 public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;
    // `session` carries the turns so far; implementations must not mutate it.
    virtual Completion complete(TemplateId id, const Session& session,
                                const std::string& rendered_prompt) = 0;
};

// Renders, appends the user turn, obtains the reply, appends the assistant
// turn and accumulates accounting. The transcript therefore alternates
// user/assistant by construction.
std::string complete(Backend& backend, Session& session, const PromptTemplate& tmpl,
                     const Bindings& bindings);

// Deterministic token estimate used where the wire gives no usage data.
std::uint64_t approx_token_count(std::string_view text);

// Replays canned replies keyed by (template id, digest of the rendered
// prompt). File format: JSON array of {template_id, digest, reply}.
class ScriptedBackend : public Backend {
 public:
    static ScriptedBackend from_file(const std::filesystem::path& path);
    static ScriptedBackend from_json_text(std::string_view text, const std::string& origin);

    std::string name() const override { return "scripted"; }
    Completion complete(TemplateId id, const Session& session,
                        const std::string& rendered_prompt) override;

    void add(TemplateId id, const std::string& digest, const std::string& reply);
    std::size_t size() const { return script_.size(); }
    std::string to_json_text() const;

 private:
    std::map<std::pair<std::string, std::string>, std::string> script_;
};

// Proves a code path performs no model traffic: any contact is an error.
class SentinelBackend : public Backend {
 public:
    std::string name() const override { return "sentinel"; }
    Completion complete(TemplateId, const Session&, const std::string&) override {
        throw BackendUnavailable("sentinel backend contacted");
    }
};

// Chat-completion HTTP endpoint. Credentials come exclusively from the
// LOGICSCAN_API_KEY environment variable, never from configuration files.
class RemoteBackend : public Backend {
 public:
    RemoteBackend(std::string endpoint_url, std::string model, double temperature = 0.0);

    std::string name() const override { return "remote_http"; }
    Completion complete(TemplateId id, const Session& session,
                        const std::string& rendered_prompt) override;

 private:
    std::string endpoint_;
    std::string model_;
    double temperature_;
};

// Accumulates exchanges into one script file; shared by every recording
// wrapper of a run so miner and checker traffic land in the same replayable
// script. The file is rewritten atomically after each record.
class ScriptRecorder {
 public:
    explicit ScriptRecorder(std::filesystem::path script_path);
    void add(TemplateId id, const std::string& digest, const std::string& reply);

 private:
    std::filesystem::path path_;
    std::mutex mu_;
    std::vector<std::map<std::string, std::string>> records_;
};

// Wraps any backend and forwards every exchange to the recorder, producing
// replayable input for ScriptedBackend.
class RecordingBackend : public Backend {
 public:
    RecordingBackend(std::shared_ptr<Backend> inner, std::shared_ptr<ScriptRecorder> recorder)
        : inner_(std::move(inner)), recorder_(std::move(recorder)) {}

    std::string name() const override { return "recording(" + inner_->name() + ")"; }
    Completion complete(TemplateId id, const Session& session,
                        const std::string& rendered_prompt) override;

 private:
    std::shared_ptr<Backend> inner_;
    std::shared_ptr<ScriptRecorder> recorder_;
};

}  // namespace logicscan
