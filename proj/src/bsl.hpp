#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logicscan {

// Lexical rule for both condition and action names: [a-z][a-z0-9_]*.
// Conditions are always positive predicates; negated source guards are
// inverted before they reach this representation.
bool is_bsl_name(std::string_view token);

// One business specification: an ordered list of preconditions and exactly
// one action. An empty check list is legal ("no mandatory checks").
struct BslSpec {
    std::vector<std::string> checks;
    std::string action;

    bool operator==(const BslSpec&) const = default;
};

struct BslSyntaxError {
    std::size_t offset = 0;
    std::string expected;

    // Stable rendering; this exact string is embedded in repair prompts, so
    // changing it invalidates recorded transcripts.
    std::string message() const;
};

using BslParseResult = std::variant<BslSpec, BslSyntaxError>;

// Strict recursive-descent parser for the concrete syntax
//
//   order ( check [ cond {"," cond} ] "," action )
//
// with optional ASCII whitespace around tokens. Anything else is rejected
// with a position-bearing error; there is no partial result.
BslParseResult parse_bsl(std::string_view text);

// Canonical form: a single space after each comma and no other whitespace.
// parse_bsl(print_bsl(s)) round-trips for every valid spec.
std::string print_bsl(const BslSpec& spec);

inline std::size_t check_count(const BslSpec& spec) { return spec.checks.size(); }

// One-line grammar summary handed to the generation prompt.
extern const char* const kBslGrammar;

}  // namespace logicscan
