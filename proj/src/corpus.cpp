#include "corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fsutil.hpp"

namespace logicscan {

using nlohmann::json;

CategoryMap CategoryMap::from_json_text(std::string_view text, const std::string& origin) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ConfigError(origin + ": category map is not a JSON object");
    CategoryMap map;
    for (const auto& sw : doc.value("stopwords", json::array())) {
        if (!sw.is_string()) throw ConfigError(origin + ": stopwords must be strings");
        map.stopwords.insert(sw.get<std::string>());
    }
    if (doc.contains("categories")) {
        if (!doc["categories"].is_object())
            throw ConfigError(origin + ": categories must be an object");
        for (const auto& [token, label] : doc["categories"].items()) {
            if (!label.is_string()) throw ConfigError(origin + ": category labels must be strings");
            map.category_tokens.emplace(token, label.get<std::string>());
        }
    }
    for (const auto& [token, label] : map.category_tokens)
        if (map.stopwords.count(token))
            throw ConfigError(origin + ": token '" + token +
                              "' is both a stopword and a category token");
    return map;
}

CategoryMap CategoryMap::load(const std::filesystem::path& path) {
    return from_json_text(read_file(path), path.string());
}

std::vector<ContractMeta> filter_contracts(const std::vector<ContractMeta>& corpus,
                                           double percentile) {
    if (corpus.empty()) throw ConfigError("filter_contracts: empty corpus");
    if (!(percentile > 0.0) || percentile > 1.0)
        throw ConfigError("filter_contracts: percentile must be in (0, 1]");

    const std::size_t n = corpus.size();
    const std::size_t top = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n))));

    auto top_set = [&](auto key) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            auto ka = key(corpus[a]), kb = key(corpus[b]);
            if (ka != kb) return ka > kb;
            return corpus[a].address < corpus[b].address;
        });
        std::unordered_set<std::size_t> keep;
        for (std::size_t i = 0; i < top; ++i) keep.insert(order[i]);
        return keep;
    };

    auto by_age = top_set([](const ContractMeta& m) { return m.deployed_days; });
    auto by_tx = top_set([](const ContractMeta& m) { return m.tx_count; });

    std::vector<ContractMeta> out;
    for (std::size_t i = 0; i < n; ++i)
        if (by_age.count(i) && by_tx.count(i)) out.push_back(corpus[i]);
    return out;
}

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_upper(c) || is_lower(c) || is_digit(c); }

std::vector<std::string> split_segments(std::string_view name) {
    std::vector<std::string> segments;
    std::string cur;
    char prev = '\0';  // raw previous character; cur holds lowercased text
    auto flush = [&] {
        if (!cur.empty()) segments.push_back(cur);
        cur.clear();
    };
    const std::size_t n = name.size();
    for (std::size_t i = 0; i < n; ++i) {
        char c = name[i];
        if (!is_alnum(c)) {  // underscores, spaces, dashes all separate
            flush();
            prev = '\0';
            continue;
        }
        if (!cur.empty()) {
            bool lower_to_upper = (is_lower(prev) || is_digit(prev)) && is_upper(c);
            // End of an acronym run: "NFTMarket" -> "NFT" | "Market".
            bool acronym_end = is_upper(prev) && is_upper(c) && i + 1 < n && is_lower(name[i + 1]);
            if (lower_to_upper || acronym_end) flush();
        }
        cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        prev = c;
    }
    flush();
    return segments;
}

bool is_version_tag(const std::string& s) {
    if (s.size() < 2 || s[0] != 'v') return false;
    return std::all_of(s.begin() + 1, s.end(), is_digit);
}

bool is_pure_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

}  // namespace

std::vector<std::string> tokenize_contract_name(std::string_view name, const CategoryMap& map) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto& seg : split_segments(name)) {
        if (is_pure_digits(seg) || is_version_tag(seg) || map.stopwords.count(seg)) continue;
        if (seen.insert(seg).second) out.push_back(std::move(seg));
    }
    return out;
}

std::optional<std::string> categorize(const std::vector<std::string>& tokens,
                                      const CategoryMap& map) {
    for (const auto& tok : tokens) {
        auto it = map.category_tokens.find(tok);
        if (it != map.category_tokens.end()) return it->second;
    }
    return std::nullopt;
}

namespace {

ContractMeta meta_from_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw ConfigError(origin + ": corpus line is not an object");
    ContractMeta m;
    m.address = j.value("address", "");
    m.name = j.value("name", "");
    m.deployed_days = j.value("deployed_days", 0ll);
    m.tx_count = j.value("tx_count", 0ll);
    m.source_path = j.value("source_path", "");
    m.category = j.value("category", "");
    if (j.contains("solidity_major") && j["solidity_major"].is_number())
        m.solidity_major = j["solidity_major"].get<int>();
    if (m.address.empty()) throw ConfigError(origin + ": corpus entry without address");
    return m;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

long long to_count(const std::string& s, const std::string& origin) {
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw ConfigError(origin + ": not a number: '" + s + "'");
    }
}

std::vector<ContractMeta> load_corpus_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::vector<ContractMeta> out;
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find("address") != std::string::npos) continue;  // header row
        }
        auto f = split_csv_line(line);
        if (f.size() < 5)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected at least 5 fields");
        ContractMeta m;
        m.address = f[0];
        m.name = f[1];
        m.deployed_days = to_count(f[2], origin);
        m.tx_count = to_count(f[3], origin);
        m.source_path = f[4];
        if (f.size() > 5) m.category = f[5];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<ContractMeta> load_corpus_jsonl(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::vector<ContractMeta> out;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": invalid JSON");
        out.push_back(meta_from_json(j, origin + ":" + std::to_string(lineno)));
    }
    return out;
}

}  // namespace

std::vector<ContractMeta> load_corpus(const std::filesystem::path& path) {
    std::string text = read_file(path);
    if (path.extension() == ".csv") return load_corpus_csv(text, path.string());
    return load_corpus_jsonl(text, path.string());
}

std::string corpus_to_jsonl(const std::vector<ContractMeta>& corpus) {
    std::string out;
    for (const auto& m : corpus) {
        json j{{"address", m.address},
               {"name", m.name},
               {"deployed_days", m.deployed_days},
               {"tx_count", m.tx_count},
               {"source_path", m.source_path}};
        if (!m.category.empty()) j["category"] = m.category;
        if (m.solidity_major) j["solidity_major"] = *m.solidity_major;
        out += j.dump();
        out += "\n";
    }
    return out;
}

}  // namespace logicscan
