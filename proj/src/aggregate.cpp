#include "aggregate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace logicscan {

std::size_t majority_threshold(std::size_t k) { return (k + 1) / 2; }

namespace {

CommonTemplate tally(const std::vector<BslSpec>& specs, const SynonymDictionary& dict) {
    if (specs.empty()) throw std::invalid_argument("aggregate: empty spec list");

    std::map<std::string, std::size_t> support;
    for (const auto& spec : specs) {
        std::set<std::string> in_this_spec;
        for (const auto& check : spec.checks) in_this_spec.insert(dict.canonicalize(check));
        for (const auto& name : in_this_spec) ++support[name];
    }

    CommonTemplate out;
    out.k = specs.size();
    for (const auto& [name, count] : support) out.invariants.push_back({name, count});
    for (const auto& spec : specs) ++out.action_modes[spec.action];
    return out;
}

void sort_invariants(std::vector<CommonInvariant>& inv) {
    std::sort(inv.begin(), inv.end(), [](const CommonInvariant& a, const CommonInvariant& b) {
        if (a.support != b.support) return a.support > b.support;
        return a.name < b.name;
    });
}

}  // namespace

CommonTemplate union_invariants(const std::vector<BslSpec>& specs, const SynonymDictionary& dict) {
    CommonTemplate out = tally(specs, dict);
    sort_invariants(out.invariants);
    return out;
}

CommonTemplate aggregate_invariants(const std::vector<BslSpec>& specs,
                                    const SynonymDictionary& dict) {
    CommonTemplate out = tally(specs, dict);
    const std::size_t threshold = majority_threshold(out.k);

    std::map<std::string, std::size_t> surviving;
    for (const auto& inv : out.invariants)
        if (inv.support >= threshold) surviving.emplace(inv.name, inv.support);

    // Conflict resolution runs after pruning: a minority-side antonym is
    // dropped even when it cleared the threshold; a tie removes the pair.
    std::set<std::string> removed;
    for (const auto& [name, count] : surviving) {
        if (removed.count(name)) continue;
        auto partner = dict.antonym_of(name);
        if (!partner) continue;
        auto other = surviving.find(*partner);
        if (other == surviving.end() || removed.count(*partner)) continue;
        if (count == other->second) {
            removed.insert(name);
            removed.insert(*partner);
        } else if (count < other->second) {
            removed.insert(name);
        } else {
            removed.insert(*partner);
        }
    }

    out.invariants.clear();
    for (const auto& [name, count] : surviving)
        if (!removed.count(name)) out.invariants.push_back({name, count});
    sort_invariants(out.invariants);
    return out;
}

std::string common_template_json(const CommonTemplate& tmpl) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& i : tmpl.invariants)
        inv.push_back({{"invariant", i.name}, {"support", i.support}});
    nlohmann::json actions = nlohmann::json::object();
    for (const auto& [name, count] : tmpl.action_modes) actions[name] = count;
    nlohmann::json doc{{"k", tmpl.k}, {"invariants", inv}, {"actions", actions}};
    return doc.dump();
}

}  // namespace logicscan
