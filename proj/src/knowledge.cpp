#include "knowledge.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "corpus.hpp"
#include "fsutil.hpp"

namespace logicscan {

using nlohmann::json;

std::string SynonymDictionary::canonicalize(std::string_view name) const {
    auto it = canonical_.find(std::string(name));
    return it == canonical_.end() ? std::string(name) : it->second;
}

std::optional<std::string> SynonymDictionary::antonym_of(std::string_view canonical_name) const {
    auto it = antonyms_.find(std::string(canonical_name));
    if (it == antonyms_.end()) return std::nullopt;
    return it->second;
}

void SynonymDictionary::add_alias(const std::string& alias, const std::string& canon) {
    if (!is_bsl_name(alias) || !is_bsl_name(canon))
        throw ConfigError("dictionary: invalid condition name in alias " + alias + " -> " + canon);
    auto it = canonical_.find(canon);
    if (it != canonical_.end() && it->second != canon)
        throw ConfigError("dictionary: '" + canon + "' is itself an alias of '" + it->second +
                          "'; chains are not allowed");
    auto existing = canonical_.find(alias);
    if (existing != canonical_.end() && existing->second != canon)
        throw ConfigError("dictionary: alias '" + alias + "' maps to both '" + existing->second +
                          "' and '" + canon + "'");
    canonical_[alias] = canon;
    canonical_.emplace(canon, canon);  // keeps canonicalize idempotent
}

void SynonymDictionary::add_antonym(const std::string& a, const std::string& b) {
    if (a == b) throw ConfigError("dictionary: '" + a + "' cannot be its own antonym");
    if (canonicalize(a) != a || canonicalize(b) != b)
        throw ConfigError("dictionary: antonym pair (" + a + ", " + b +
                          ") must use canonical terms");
    auto ita = antonyms_.find(a);
    if (ita != antonyms_.end() && ita->second != b)
        throw ConfigError("dictionary: '" + a + "' already has antonym '" + ita->second + "'");
    auto itb = antonyms_.find(b);
    if (itb != antonyms_.end() && itb->second != a)
        throw ConfigError("dictionary: '" + b + "' already has antonym '" + itb->second + "'");
    antonyms_[a] = b;
    antonyms_[b] = a;
}

SynonymDictionary SynonymDictionary::from_json_text(std::string_view text,
                                                    const std::string& origin) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ConfigError(origin + ": dictionary is not a JSON object");
    SynonymDictionary dict;
    if (doc.contains("canonical")) {
        if (!doc["canonical"].is_object())
            throw ConfigError(origin + ": 'canonical' must be an object");
        // Entries are either "alias": "canon" or "canon": ["alias", ...].
        // Canonical terms register first so aliases can appear in any order
        // without tripping the chain check.
        std::vector<std::pair<std::string, std::string>> alias_pairs;
        for (const auto& [key, value] : doc["canonical"].items()) {
            if (value.is_string()) {
                dict.add_alias(value.get<std::string>(), value.get<std::string>());
                if (key != value.get<std::string>())
                    alias_pairs.emplace_back(key, value.get<std::string>());
            } else if (value.is_array()) {
                dict.add_alias(key, key);
                for (const auto& alias : value) {
                    if (!alias.is_string())
                        throw ConfigError(origin + ": alias lists must contain strings");
                    alias_pairs.emplace_back(alias.get<std::string>(), key);
                }
            } else {
                throw ConfigError(origin +
                                  ": canonical values must be strings or alias arrays");
            }
        }
        for (const auto& [alias, canon] : alias_pairs) dict.add_alias(alias, canon);
    }
    for (const auto& pair : doc.value("antonyms", json::array())) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
            throw ConfigError(origin + ": antonym entries must be [a, b] string pairs");
        dict.add_antonym(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    return dict;
}

SynonymDictionary SynonymDictionary::load(const std::filesystem::path& path) {
    return from_json_text(read_file(path), path.string());
}

std::vector<FrequencyEntry> rank_conditions(const std::vector<BslSpec>& specs,
                                            std::size_t top_n) {
    std::map<std::string, std::size_t> counts;
    for (const auto& spec : specs)
        for (const auto& check : spec.checks) ++counts[check];

    std::vector<FrequencyEntry> out;
    out.reserve(counts.size());
    for (auto& [name, count] : counts) out.push_back({name, count});
    std::sort(out.begin(), out.end(), [](const FrequencyEntry& a, const FrequencyEntry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.name < b.name;
    });
    if (out.size() > top_n) out.resize(top_n);
    return out;
}

std::string frequency_report_csv(const std::vector<FrequencyEntry>& entries) {
    std::string out = "condition,count\n";
    for (const auto& e : entries) {
        out += e.name;
        out += ',';
        out += std::to_string(e.count);
        out += '\n';
    }
    return out;
}

}  // namespace logicscan
