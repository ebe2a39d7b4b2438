#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logicscan {

// Byte offsets into the source file, [begin, end).
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool contains(std::size_t offset) const { return offset >= begin && offset < end; }
    bool operator==(const SourceSpan&) const = default;
};

enum class Visibility { kPublic, kExternal, kInternal, kPrivate };
std::string_view to_string(Visibility v);

struct FunctionEntry {
    std::string name;
    Visibility visibility = Visibility::kPublic;
    // Whole declaration, from the `function` keyword through the closing brace.
    SourceSpan source_span;
    // Text strictly inside the braces. Empty for bodyless declarations.
    std::string body_text;
    std::vector<std::string> modifiers;
    std::string contract_name;
};

struct ModifierEntry {
    std::string name;
    SourceSpan source_span;
    std::string body_text;
    std::string contract_name;
};

struct StateVariable {
    std::string name;
    SourceSpan source_span;
    std::string contract_name;
};

// Raised when the declaration-level scan cannot make sense of the file
// (unterminated braces, contract without a body, and similar). Callers log
// the offset and skip the contract; there is no recovery path.
struct SolidityParseError : std::runtime_error {
    SolidityParseError(std::size_t offset_, const std::string& reason_)
        : std::runtime_error("parse failure at offset " + std::to_string(offset_) + ": " + reason_),
          offset(offset_),
          reason(reason_) {}
    std::size_t offset;
    std::string reason;
};

// Declaration-level view of a flattened source file. Bodies are kept as raw
// text; statement structure is only recovered where the pipeline needs it
// (explicit checks, call sites, assignments).
struct ParsedSource {
    std::string text;
    // Minor series X of the lowest 0.X.Y bound in the first
    // `pragma solidity` directive; nullopt when the pragma is absent.
    std::optional<int> pragma_major;
    std::vector<FunctionEntry> functions;  // declaration order, all visibilities
    std::vector<ModifierEntry> modifiers;
    std::vector<StateVariable> state_variables;
    std::vector<std::string> warnings;  // e.g. duplicate simple names
};

ParsedSource parse_solidity(std::string_view source);

std::optional<int> extract_pragma_major(std::string_view source);

// Audit entry points: public and external functions, declaration order.
// Constructors, receive and fallback never appear in ParsedSource.functions.
std::vector<FunctionEntry> enumerate_public_functions(const ParsedSource& src);

struct ExpandedFunction {
    FunctionEntry entry;
    // Entry body first, then bodies of applied modifiers and transitively
    // called same-file internal/private functions, each exactly once in
    // first-reachable order.
    std::string expanded_source;
    // Every callee and modifier name reached, including calls that resolve
    // to nothing in this file (external contracts, interfaces, builtins).
    std::set<std::string> reached_names;
};

struct UnknownFunction : std::runtime_error {
    explicit UnknownFunction(const std::string& name)
        : std::runtime_error("unknown function: " + name) {}
};

ExpandedFunction expand_call_chain(const ParsedSource& src, std::string_view name);

enum class CheckKind { kRequire, kAssert, kIfRevert };
std::string_view to_string(CheckKind k);

struct ExplicitCheck {
    CheckKind kind;
    SourceSpan span;  // offsets into the scanned text
    std::string condition_text;
};

// Scans a body (usually ExpandedFunction.expanded_source) for require(...),
// assert(...) and revert-guarded if statements, in textual order. An if
// counts once when any revert/throw appears in its taken branch, regardless
// of statements around it; guards nested inside a counted branch are not
// counted again.
std::vector<ExplicitCheck> find_explicit_checks(std::string_view code);

// Functions other than the expanded entry whose body assigns (plain or
// compound assignment, or delete) to a state variable referenced anywhere in
// the expanded source. One level only; writers are not expanded further.
std::vector<FunctionEntry> find_state_variable_writers(const ParsedSource& src,
                                                       const ExpandedFunction& fn);

}  // namespace logicscan
