#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bsl.hpp"
#include "knowledge.hpp"

namespace logicscan {

struct CommonInvariant {
    std::string name;     // canonical
    std::size_t support;  // distinct source specs containing the term

    bool operator==(const CommonInvariant&) const = default;
};

// Majority-voted checklist over k retrieved specs. Actions are reported as
// observed frequencies and are never voted on.
struct CommonTemplate {
    std::size_t k = 0;
    std::vector<CommonInvariant> invariants;       // support desc, name asc
    std::map<std::string, std::size_t> action_modes;

    bool operator==(const CommonTemplate&) const = default;
};

// Canonicalizes every check, counts support per spec (duplicates within one
// spec count once), prunes support < ceil(k/2), then resolves surviving
// antonym pairs: equal support removes both, otherwise the minority side is
// dropped. Order of the input specs never changes the result.
// Throws std::invalid_argument on an empty input.
CommonTemplate aggregate_invariants(const std::vector<BslSpec>& specs,
                                    const SynonymDictionary& dict);

// Ablation variant: same canonicalization and support counting, but no
// majority pruning and no antonym filtering. Superset of the voted result.
CommonTemplate union_invariants(const std::vector<BslSpec>& specs,
                                const SynonymDictionary& dict);

std::size_t majority_threshold(std::size_t k);  // ceil(k/2)

std::string common_template_json(const CommonTemplate& tmpl);

}  // namespace logicscan
