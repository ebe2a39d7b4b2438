#include "gateway.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "digest.hpp"
#include "httplib_compat.hpp"
#include "fsutil.hpp"

namespace logicscan {

using nlohmann::json;

namespace {

struct TemplateDef {
    TemplateId id;
    std::string_view name;
    std::string_view text;
};

// Literal braces in the JSON examples are doubled; the renderer unescapes
// them. Changing any text here invalidates previously recorded scripts.
const TemplateDef kTemplates[] = {
    {TemplateId::kR1FuncDesc, "R1_func_desc",
     "Analyze function {name} and call chain {code} in a DeFi {category} contract. "
     "Generate a 1-sentence description following: \"This function is used to <purpose>, "
     "accepts <inputs>, processes <logic>, and outputs <result>.\" Output only the sentence."},
    {TemplateId::kR2LogicSummary, "R2_logic_summary",
     "Summarize the mandatory pre-execution checks of the function above (focusing on require, "
     "assert and revert guards) into a single sentence. Output only the summary without "
     "explanation."},
    {TemplateId::kR3BslGen, "R3_bsl_gen",
     "Convert the checks to BSL (syntax: {grammar}). Format: order(check[cond1, ...], action). "
     "Rules: 1) Map each explicit validation to a positive precondition name (invert if...revert "
     "logic). 2) The action names the semantic purpose of the function. "
     "Example: order(check[balance_ge_reserve], swap). Output only the BSL."},
    {TemplateId::kR4Repair, "R4_repair",
     "The generated BSL failed validation. Error: {error}. Task: correct the BSL {invalid_bsl} "
     "based on the error. Ensure strict adherence to BSL syntax and that the number of checks "
     "matches the explicit checks of the source exactly. Output only the corrected BSL."},
    {TemplateId::kC1Induction, "C1_induction",
     "You are auditing a Solidity function in the {category} business category. Below are {k} "
     "reference implementations of the same kind of functionality, each with its mined business "
     "specification.\n\n{templates}\n\nSummarize the common pre-execution business invariants "
     "that these reference implementations enforce."},
    {TemplateId::kC2Verification, "C2_verification",
     "The consensus business template for this functionality, derived by majority vote across "
     "the reference implementations, is:\n{common_template}\n\nTarget function (full call "
     "chain):\n{target_code}\n\nFunctions writing the state variables the target "
     "reads:\n{writer_code}\n\nFor each invariant in the consensus template, judge whether the "
     "target enforces it explicitly or preserves it through logically equivalent checks. Reply "
     "with a JSON array only, one element per invariant, each of the form {{\"invariant\": "
     "\"<name>\", \"status\": \"enforced\"|\"semantically_preserved\"|\"missing\"|\"partial\", "
     "\"evidence\": \"<quote or explanation>\"}}."},
    {TemplateId::kC3Deviation, "C3_deviation",
     "The following consensus invariants are missing or only partially satisfied in the "
     "target:\n{deviations}\n\nFor each one, decide whether the deviation is a deliberate, "
     "benign design choice or a review-worthy omission that may introduce exploitable behavior. "
     "Reply with a JSON array only, each element of the form {{\"invariant\": \"<name>\", "
     "\"classification\": \"review_worthy\"|\"benign_deviation\", \"rationale\": \"<one "
     "sentence>\"}}."},
};

}  // namespace

std::string_view template_id_name(TemplateId id) {
    for (const auto& t : kTemplates)
        if (t.id == id) return t.name;
    return "unknown";
}

std::optional<TemplateId> template_id_from_name(std::string_view name) {
    for (const auto& t : kTemplates)
        if (t.name == name) return t.id;
    return std::nullopt;
}

const PromptTemplate& builtin_template(TemplateId id) {
    static const std::map<TemplateId, PromptTemplate>* table = [] {
        auto* m = new std::map<TemplateId, PromptTemplate>;
        for (const auto& t : kTemplates) (*m)[t.id] = PromptTemplate{t.id, std::string(t.text)};
        return m;
    }();
    return table->at(id);
}

std::string render_prompt(const PromptTemplate& tmpl, const Bindings& bindings) {
    std::string out;
    out.reserve(tmpl.text.size());
    const std::string& text = tmpl.text;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '{' && i + 1 < text.size() && text[i + 1] == '{') {
            out += '{';
            ++i;
        } else if (c == '}' && i + 1 < text.size() && text[i + 1] == '}') {
            out += '}';
            ++i;
        } else if (c == '{') {
            std::size_t close = text.find('}', i + 1);
            if (close == std::string::npos)
                throw TemplateError(std::string(template_id_name(tmpl.id)) +
                                    ": unterminated placeholder");
            std::string key = text.substr(i + 1, close - i - 1);
            auto it = bindings.find(key);
            if (it == bindings.end())
                throw TemplateError(std::string(template_id_name(tmpl.id)) +
                                    ": unbound placeholder {" + key + "}");
            out += it->second;
            i = close;
        } else {
            out += c;
        }
    }
    return out;
}

std::string prompt_digest(std::string_view rendered_prompt) { return digest_hex(rendered_prompt); }

std::string request_digest(const Session& session, std::string_view rendered_prompt) {
    std::string payload;
    for (const auto& turn : session.transcript) {
        payload += turn.role;
        payload += '\n';
        payload += turn.text;
        payload += '\n';
    }
    payload += "user\n";
    payload += rendered_prompt;
    return digest_hex(payload);
}

std::uint64_t approx_token_count(std::string_view text) {
    std::uint64_t count = 0;
    bool in_word = false;
    for (char c : text) {
        bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

std::string complete(Backend& backend, Session& session, const PromptTemplate& tmpl,
                     const Bindings& bindings) {
    std::string rendered = render_prompt(tmpl, bindings);
    Completion result = backend.complete(tmpl.id, session, rendered);
    session.transcript.push_back(Turn{"user", std::move(rendered), tmpl.id});
    session.transcript.push_back(Turn{"assistant", result.text, tmpl.id});
    session.tokens_in += result.tokens_in;
    session.tokens_out += result.tokens_out;
    session.wall_time_ms += result.elapsed_ms;
    return result.text;
}

// --- scripted -------------------------------------------------------------

ScriptedBackend ScriptedBackend::from_json_text(std::string_view text, const std::string& origin) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_array())
        throw GatewayError(origin + ": script must be a JSON array");
    ScriptedBackend backend;
    for (const auto& rec : doc) {
        if (!rec.is_object() || !rec.contains("template_id") || !rec.contains("digest") ||
            !rec.contains("reply"))
            throw GatewayError(origin + ": script records need template_id, digest, reply");
        auto id = template_id_from_name(rec["template_id"].get<std::string>());
        if (!id)
            throw GatewayError(origin + ": unknown template_id " +
                               rec["template_id"].get<std::string>());
        backend.add(*id, rec["digest"].get<std::string>(), rec["reply"].get<std::string>());
    }
    return backend;
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
    return from_json_text(read_file(path), path.string());
}

void ScriptedBackend::add(TemplateId id, const std::string& digest, const std::string& reply) {
    script_[{std::string(template_id_name(id)), digest}] = reply;
}

Completion ScriptedBackend::complete(TemplateId id, const Session& session,
                                     const std::string& rendered_prompt) {
    auto key =
        std::make_pair(std::string(template_id_name(id)), request_digest(session, rendered_prompt));
    auto it = script_.find(key);
    if (it == script_.end())
        throw ScriptMiss("no scripted reply for " + key.first + " digest " + key.second +
                         " (prompt starts: " + rendered_prompt.substr(0, 80) + ")");
    // elapsed_ms stays 0 so replayed runs account identically every time.
    return {it->second, approx_token_count(rendered_prompt), approx_token_count(it->second), 0};
}

std::string ScriptedBackend::to_json_text() const {
    json doc = json::array();
    for (const auto& [key, reply] : script_)
        doc.push_back({{"template_id", key.first}, {"digest", key.second}, {"reply", reply}});
    return doc.dump(2);
}

// --- remote ---------------------------------------------------------------

namespace {

struct ParsedUrl {
    std::string host_port;  // scheme://host[:port]
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw BackendUnavailable("endpoint must be an http(s) URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

RemoteBackend::RemoteBackend(std::string endpoint_url, std::string model, double temperature)
    : endpoint_(std::move(endpoint_url)), model_(std::move(model)), temperature_(temperature) {}

Completion RemoteBackend::complete(TemplateId, const Session& session,
                                   const std::string& rendered_prompt) {
    json messages = json::array();
    for (const auto& turn : session.transcript)
        messages.push_back({{"role", turn.role}, {"content", turn.text}});
    messages.push_back({{"role", "user"}, {"content", rendered_prompt}});
    json body{{"model", model_}, {"messages", messages}, {"temperature", temperature_}};
    std::string payload = body.dump();

    ParsedUrl url = split_url(endpoint_);
    const char* key = std::getenv("LOGICSCAN_API_KEY");

    std::string last_error;
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100 << (attempt - 1)));
        auto start = std::chrono::steady_clock::now();
        httplib::Client client(url.host_port);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);
        auto res = client.Post(url.path, headers, payload, "application/json");
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (!res) {
            last_error = "transport error " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "http status " + std::to_string(res->status);
            continue;
        }
        json reply = json::parse(res->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty() ||
            !reply["choices"][0].contains("message")) {
            last_error = "malformed completion payload";
            continue;
        }
        Completion out;
        out.text = reply["choices"][0]["message"].value("content", "");
        out.elapsed_ms = static_cast<std::uint64_t>(elapsed);
        if (reply.contains("usage") && reply["usage"].is_object()) {
            out.tokens_in = reply["usage"].value("prompt_tokens", 0ull);
            out.tokens_out = reply["usage"].value("completion_tokens", 0ull);
        } else {
            out.tokens_in = approx_token_count(rendered_prompt);
            out.tokens_out = approx_token_count(out.text);
        }
        return out;
    }
    throw BackendUnavailable("remote backend failed after 3 attempts: " + last_error);
}

// --- recording ------------------------------------------------------------

ScriptRecorder::ScriptRecorder(std::filesystem::path script_path)
    : path_(std::move(script_path)) {}

void ScriptRecorder::add(TemplateId id, const std::string& digest, const std::string& reply) {
    std::lock_guard<std::mutex> lock(mu_);
    records_.push_back({{"template_id", std::string(template_id_name(id))},
                        {"digest", digest},
                        {"reply", reply}});
    json doc = json::array();
    for (const auto& rec : records_) doc.push_back(rec);
    atomic_write_file(path_, doc.dump(2));
}

Completion RecordingBackend::complete(TemplateId id, const Session& session,
                                      const std::string& rendered_prompt) {
    Completion result = inner_->complete(id, session, rendered_prompt);
    recorder_->add(id, request_digest(session, rendered_prompt), result.text);
    return result;
}

}  // namespace logicscan
