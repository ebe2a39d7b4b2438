#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsl.hpp"

namespace logicscan {

// Alias -> canonical condition name plus antonym pairs over canonical terms.
// canonicalize is idempotent: canonical terms map to themselves and unknown
// names pass through unchanged, so it is safe to apply at every boundary.
class SynonymDictionary {
 public:
    SynonymDictionary() = default;

    static SynonymDictionary load(const std::filesystem::path& path);
    static SynonymDictionary from_json_text(std::string_view text, const std::string& origin);

    std::string canonicalize(std::string_view name) const;
    std::optional<std::string> antonym_of(std::string_view canonical_name) const;

    // Validates and inserts; `a` and `b` must already be canonical and distinct.
    void add_alias(const std::string& alias, const std::string& canon);
    void add_antonym(const std::string& a, const std::string& b);

    const std::map<std::string, std::string>& aliases() const { return canonical_; }
    const std::map<std::string, std::string>& antonyms() const { return antonyms_; }

 private:
    std::map<std::string, std::string> canonical_;  // alias -> canonical
    std::map<std::string, std::string> antonyms_;   // stored in both directions
};

struct FrequencyEntry {
    std::string name;
    std::size_t count;

    bool operator==(const FrequencyEntry&) const = default;
};

// Counts every condition occurrence across the given specs, descending by
// count with ties broken by name ascending, truncated to top_n. Condition
// names are counted as written; canonicalize first to pool synonyms.
std::vector<FrequencyEntry> rank_conditions(const std::vector<BslSpec>& specs,
                                            std::size_t top_n = 2000);

std::string frequency_report_csv(const std::vector<FrequencyEntry>& entries);

}  // namespace logicscan
