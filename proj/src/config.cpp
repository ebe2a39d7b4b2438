#include "config.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

#include "fsutil.hpp"

namespace logicscan {

std::map<std::string, std::string> parse_flat_config(std::string_view text,
                                                     const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

namespace {

std::string env_override(const std::string& key) {
    std::string name = "LOGICSCAN_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const char* v = std::getenv(name.c_str());
    return v ? v : "";
}

class Reader {
 public:
    Reader(std::map<std::string, std::string> kv, std::string origin)
        : kv_(std::move(kv)), origin_(std::move(origin)) {}

    std::string str(const std::string& key, const std::string& fallback) {
        std::string env = env_override(key);
        if (!env.empty()) return env;
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        std::string s = str(key, "");
        if (s.empty()) return fallback;
        try {
            long long v = std::stoll(s);
            if (v < 0) throw std::out_of_range("negative");
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": " + key + " must be a non-negative integer, got '" +
                              s + "'");
        }
    }

    double real(const std::string& key, double fallback) {
        std::string s = str(key, "");
        if (s.empty()) return fallback;
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": " + key + " must be a number, got '" + s + "'");
        }
    }

    bool flag(const std::string& key, bool fallback) {
        std::string s = str(key, "");
        if (s.empty()) return fallback;
        if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
        if (s == "false" || s == "0" || s == "no" || s == "off") return false;
        throw ConfigError(origin_ + ": " + key + " must be true or false, got '" + s + "'");
    }

    const std::map<std::string, std::string>& raw() const { return kv_; }
    const std::string& origin() const { return origin_; }

 private:
    std::map<std::string, std::string> kv_;
    std::string origin_;
};

}  // namespace

Config Config::from_text(std::string_view text, const std::string& origin) {
    Reader r(parse_flat_config(text, origin), origin);

    static const std::set<std::string> known = {
        "store_dir",      "category_map",     "dictionary",       "retrieval_k",
        "min_similarity", "parallelism",      "temperature",      "miner_backend",
        "miner_script",   "miner_endpoint",   "miner_model",      "checker_backend",
        "checker_script", "checker_endpoint", "checker_model",    "embedder",
        "embedder_dim",   "embedder_endpoint", "include_writers", "aggregate_templates"};
    for (const auto& [key, value] : r.raw())
        if (!known.count(key)) throw ConfigError(origin + ": unknown key '" + key + "'");

    Config c;
    c.store_dir = r.str("store_dir", c.store_dir.string());
    c.category_map = r.str("category_map", "");
    c.dictionary = r.str("dictionary", "");
    c.retrieval_k = r.count("retrieval_k", c.retrieval_k);
    c.min_similarity = r.real("min_similarity", c.min_similarity);
    c.parallelism = r.count("parallelism", c.parallelism);
    c.temperature = r.real("temperature", c.temperature);
    c.include_writers = r.flag("include_writers", c.include_writers);
    c.aggregate_templates = r.flag("aggregate_templates", c.aggregate_templates);
    c.miner_backend = r.str("miner_backend", c.miner_backend);
    c.miner_script = r.str("miner_script", "");
    c.miner_endpoint = r.str("miner_endpoint", "");
    c.miner_model = r.str("miner_model", "");
    c.checker_backend = r.str("checker_backend", c.checker_backend);
    c.checker_script = r.str("checker_script", "");
    c.checker_endpoint = r.str("checker_endpoint", "");
    c.checker_model = r.str("checker_model", "");
    c.embedder = r.str("embedder", c.embedder);
    c.embedder_dim = r.count("embedder_dim", c.embedder_dim);
    c.embedder_endpoint = r.str("embedder_endpoint", "");
    c.validate(origin);
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    return from_text(read_file(path), path.string());
}

void Config::validate(const std::string& origin) const {
    auto fail = [&](const std::string& msg) { throw ConfigError(origin + ": " + msg); };
    if (retrieval_k < 1) fail("retrieval_k must be at least 1");
    if (!(min_similarity > 0.0) || min_similarity > 1.0)
        fail("min_similarity must be in (0, 1]");
    if (parallelism < 1) fail("parallelism must be at least 1");
    if (embedder_dim < 1) fail("embedder_dim must be at least 1");

    auto check_backend = [&](const std::string& slot, const std::string& kind,
                             const std::filesystem::path& script, const std::string& endpoint) {
        if (kind != "scripted" && kind != "remote_http" && kind != "sentinel")
            fail(slot + " must be scripted, remote_http or sentinel, got '" + kind + "'");
        if (kind == "scripted" && script.empty())
            fail(slot + " is scripted but " + slot.substr(0, slot.find('_')) +
                 "_script is not set");
        if (kind == "remote_http" && endpoint.empty())
            fail(slot + " is remote_http but its endpoint is not set");
    };
    check_backend("miner_backend", miner_backend, miner_script, miner_endpoint);
    check_backend("checker_backend", checker_backend, checker_script, checker_endpoint);

    if (embedder != "deterministic_test" && embedder != "remote_http")
        fail("embedder must be deterministic_test or remote_http, got '" + embedder + "'");
    if (embedder == "remote_http" && embedder_endpoint.empty())
        fail("embedder is remote_http but embedder_endpoint is not set");

    if (!category_map.empty() && !std::filesystem::exists(category_map))
        fail("category_map file does not exist: " + category_map.string());
    if (!dictionary.empty() && !std::filesystem::exists(dictionary))
        fail("dictionary file does not exist: " + dictionary.string());
}

}  // namespace logicscan
