#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logicscan {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ContractMeta {
    std::string address;
    std::string name;
    long long deployed_days = 0;
    long long tx_count = 0;
    std::string source_path;
    std::string category;        // empty = uncategorized
    std::optional<int> solidity_major;

    bool operator==(const ContractMeta&) const = default;
};

// Token -> category label plus the stopword list used by the tokenizer.
// The two key sets must be disjoint; overlap is a load-time error.
struct CategoryMap {
    std::set<std::string> stopwords;
    std::map<std::string, std::string> category_tokens;

    static CategoryMap load(const std::filesystem::path& path);
    static CategoryMap from_json_text(std::string_view text, const std::string& origin);
};

// Keeps contracts ranked in the top `percentile` fraction of BOTH orderings:
// deployed_days descending and tx_count descending, ties broken by address
// ascending. The cut per ordering is ceil(percentile * n), so small corpora
// never produce an empty top set. Input order is preserved.
std::vector<ContractMeta> filter_contracts(const std::vector<ContractMeta>& corpus,
                                           double percentile);

// Splits on underscores and camelCase boundaries (an uppercase run is one
// acronym token), lowercases, strips pure-digit tokens, v<digits> version
// tags and stopwords, then deduplicates preserving first occurrence.
// Idempotent: tokenizing the underscore-join of the output returns the same
// list.
std::vector<std::string> tokenize_contract_name(std::string_view name, const CategoryMap& map);

// First token with a category mapping decides; nullopt = uncategorized.
std::optional<std::string> categorize(const std::vector<std::string>& tokens,
                                      const CategoryMap& map);

// Metadata table, one contract per line. JSON-lines with keys matching
// ContractMeta, or CSV with header
//   address,name,deployed_days,tx_count,source_path[,category]
// selected by file extension (.csv vs anything else).
std::vector<ContractMeta> load_corpus(const std::filesystem::path& path);
std::string corpus_to_jsonl(const std::vector<ContractMeta>& corpus);

}  // namespace logicscan
