#pragma once

// Test-side oracles: independent reimplementations of the library's
// contracts, kept deliberately naive (regex, linear scans, direct formula
// evaluation) so they cannot share bugs with the production code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(LOGICSCAN_FIXTURES) / name;
}

// --- BSL ----------------------------------------------------------------

// Whole-string grammar check via regex, whitespace-tolerant between tokens.
inline bool bsl_valid(const std::string& text) {
    static const std::regex re(
        R"(^\s*order\s*\(\s*check\s*\[\s*(?:[a-z][a-z0-9_]*(?:\s*,\s*[a-z][a-z0-9_]*)*\s*)?\]\s*,\s*[a-z][a-z0-9_]*\s*\)\s*$)");
    return std::regex_match(text, re);
}

inline std::vector<std::string> bsl_names(const std::string& text) {
    // All identifiers in order; the last one is the action.
    static const std::regex name_re(R"([a-z][a-z0-9_]*)");
    std::vector<std::string> out;
    auto begin = std::sregex_iterator(text.begin(), text.end(), name_re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        std::string m = it->str();
        if (m != "order" && m != "check") out.push_back(m);
    }
    return out;
}

// --- random BSL generation and mutation ----------------------------------

inline std::string random_name(std::mt19937& rng, int min_len = 1, int max_len = 12) {
    static const std::string first = "abcdefghijklmnopqrstuvwxyz";
    static const std::string rest = first + "0123456789_";
    std::uniform_int_distribution<int> len(min_len, max_len);
    int n = len(rng);
    std::string out;
    out += first[std::uniform_int_distribution<size_t>(0, first.size() - 1)(rng)];
    for (int i = 1; i < n; ++i)
        out += rest[std::uniform_int_distribution<size_t>(0, rest.size() - 1)(rng)];
    return out;
}

inline std::string random_bsl(std::mt19937& rng, int max_checks = 6) {
    std::uniform_int_distribution<int> count(0, max_checks);
    int n = count(rng);
    std::string out = "order(check[";
    for (int i = 0; i < n; ++i) {
        if (i) out += ", ";
        out += random_name(rng);
    }
    out += "], " + random_name(rng) + ")";
    return out;
}

// One random single-character edit: delete, insert or replace.
inline std::string mutate(const std::string& text, std::mt19937& rng) {
    static const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyzABC0123456789_,[]() {}.;";
    std::string out = text;
    std::uniform_int_distribution<int> op(0, 2);
    switch (op(rng)) {
        case 0: {  // delete
            if (out.empty()) return out;
            std::uniform_int_distribution<size_t> pos(0, out.size() - 1);
            out.erase(pos(rng), 1);
            break;
        }
        case 1: {  // insert
            std::uniform_int_distribution<size_t> pos(0, out.size());
            std::uniform_int_distribution<size_t> ch(0, alphabet.size() - 1);
            out.insert(pos(rng), 1, alphabet[ch(rng)]);
            break;
        }
        default: {  // replace
            if (out.empty()) return out;
            std::uniform_int_distribution<size_t> pos(0, out.size() - 1);
            std::uniform_int_distribution<size_t> ch(0, alphabet.size() - 1);
            out[pos(rng)] = alphabet[ch(rng)];
            break;
        }
    }
    return out;
}

// --- aggregation ----------------------------------------------------------

struct AggregateOracle {
    std::map<std::string, std::size_t> invariants;  // canonical -> support
    std::map<std::string, std::size_t> actions;
};

// Direct restatement of the voting rule: per-spec distinct canonical
// support, prune below ceil(k/2), then resolve antonym pairs (tie removes
// both, otherwise the minority side drops).
inline AggregateOracle aggregate(
    const std::vector<std::pair<std::vector<std::string>, std::string>>& specs,
    const std::map<std::string, std::string>& alias_to_canon,
    const std::vector<std::pair<std::string, std::string>>& antonym_pairs) {
    auto canon = [&](const std::string& name) {
        auto it = alias_to_canon.find(name);
        return it == alias_to_canon.end() ? name : it->second;
    };
    AggregateOracle out;
    for (const auto& [checks, action] : specs) {
        std::set<std::string> distinct;
        for (const auto& c : checks) distinct.insert(canon(c));
        for (const auto& c : distinct) ++out.invariants[c];
        ++out.actions[action];  // actions are observed, never canonicalized
    }
    std::size_t k = specs.size();
    auto threshold = static_cast<std::size_t>(std::ceil(k / 2.0));
    for (auto it = out.invariants.begin(); it != out.invariants.end();)
        it = it->second < threshold ? out.invariants.erase(it) : std::next(it);
    for (const auto& [a, b] : antonym_pairs) {
        auto ia = out.invariants.find(a);
        auto ib = out.invariants.find(b);
        if (ia == out.invariants.end() || ib == out.invariants.end()) continue;
        if (ia->second == ib->second) {
            out.invariants.erase(ia);
            out.invariants.erase(b);
        } else if (ia->second < ib->second) {
            out.invariants.erase(ia);
        } else {
            out.invariants.erase(ib);
        }
    }
    return out;
}

// --- retrieval -------------------------------------------------------------

struct ScoredId {
    std::string id;
    double similarity;
};

inline double cosine(const std::vector<float>& a, const std::vector<float>& b) {
    double dot = 0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += double(a[i]) * double(b[i]);
    return dot;
}

struct RecordView {
    std::string id;
    int solidity_major;
    std::string category;
    std::vector<float> embedding;
};

inline std::vector<ScoredId> top_k(const std::vector<RecordView>& records,
                                   const std::vector<float>& query, int major,
                                   const std::string& category, std::size_t k, double min_sim) {
    std::vector<ScoredId> hits;
    for (const auto& r : records) {
        if (r.solidity_major < 0 || r.solidity_major != major) continue;
        if (!category.empty() && r.category != category) continue;
        double sim = cosine(r.embedding, query);
        if (sim >= min_sim) hits.push_back({r.id, sim});
    }
    std::sort(hits.begin(), hits.end(), [](const ScoredId& a, const ScoredId& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.id < b.id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

// --- metrics ----------------------------------------------------------------

struct MetricsOracle {
    std::optional<double> precision, recall, f1, fpr;
};

inline MetricsOracle metrics(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    MetricsOracle m;
    bool no_positive_truth = (tp + fn) == 0;
    if (tp + fp > 0 && !no_positive_truth) m.precision = double(tp) / double(tp + fp);
    if (!no_positive_truth) m.recall = double(tp) / double(tp + fn);
    if (m.precision && m.recall && (*m.precision + *m.recall) > 0)
        m.f1 = 2 * *m.precision * *m.recall / (*m.precision + *m.recall);
    if (fp + tn > 0) m.fpr = double(fp) / double(fp + tn);
    return m;
}

}  // namespace oracle
