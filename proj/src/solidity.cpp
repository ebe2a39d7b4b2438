#include "solidity.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_set>

namespace logicscan {

namespace {

enum class TokKind { kIdent, kNumber, kString, kPunct };

struct Tok {
    TokKind kind;
    std::string_view text;
    std::size_t offset;

    bool is(std::string_view s) const { return text == s; }
    bool ident(std::string_view s) const { return kind == TokKind::kIdent && text == s; }
};

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Comments and string literals are dropped here, so every later scan can
// treat braces and keywords literally.
std::vector<Tok> lex(std::string_view src) {
    static const std::array<std::string_view, 3> three = {"<<=", ">>=", "**="};
    static const std::array<std::string_view, 19> two = {
        "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=",
        "%=", "|=", "&=", "^=", "++", "--", "=>", "->", "**"};

    std::vector<Tok> out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    while (i < n) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            i += 2;
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) ++i;
            i = (i + 1 < n) ? i + 2 : n;
            continue;
        }
        if (c == '"' || c == '\'') {
            std::size_t start = i++;
            while (i < n && src[i] != c && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < n) ++i;
                ++i;
            }
            if (i < n && src[i] == c) ++i;
            out.push_back({TokKind::kString, src.substr(start, i - start), start});
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t start = i;
            while (i < n && is_ident_char(src[i])) ++i;
            out.push_back({TokKind::kIdent, src.substr(start, i - start), start});
            continue;
        }
        if (is_digit(c)) {
            std::size_t start = i;
            while (i < n && is_ident_char(src[i])) ++i;  // 0x1f, 1e18, 10_000
            out.push_back({TokKind::kNumber, src.substr(start, i - start), start});
            continue;
        }
        std::size_t rest = n - i;
        std::string_view best;
        for (auto op : three)
            if (rest >= 3 && src.substr(i, 3) == op) best = op;
        if (best.empty())
            for (auto op : two)
                if (rest >= 2 && src.substr(i, 2) == op) best = op;
        if (best.empty()) best = src.substr(i, 1);
        out.push_back({TokKind::kPunct, best, i});
        i += best.size();
    }
    return out;
}

bool is_elementary_type(std::string_view t) {
    auto all_digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
    };
    if (t == "address" || t == "bool" || t == "string" || t == "byte" || t == "mapping" ||
        t == "payable" || t == "type")
        return true;
    if (t.substr(0, 4) == "uint") return t.size() == 4 || all_digits(t.substr(4));
    if (t.substr(0, 3) == "int") return t.size() == 3 || all_digits(t.substr(3));
    if (t.substr(0, 5) == "bytes") return t.size() == 5 || all_digits(t.substr(5));
    return false;
}

const std::unordered_set<std::string_view>& statement_keywords() {
    static const std::unordered_set<std::string_view> kw = {
        "require", "assert", "revert", "if",     "else",    "for",      "while",
        "do",      "return", "emit",   "new",    "delete",  "try",      "catch",
        "break",   "continue", "throw", "using", "returns", "function", "unchecked",
        "assembly"};
    return kw;
}

const std::unordered_set<std::string_view>& header_keywords() {
    static const std::unordered_set<std::string_view> kw = {
        "public",   "external", "internal", "private",  "pure",    "view",
        "payable",  "constant", "virtual",  "override", "returns", "memory",
        "storage",  "calldata", "immutable"};
    return kw;
}

class DeclScanner {
 public:
    DeclScanner(std::string_view src, ParsedSource& out)
        : src_(src), toks_(lex(src)), out_(out) {}

    void run() {
        std::size_t i = 0;
        while (i < toks_.size()) {
            const Tok& t = toks_[i];
            if (t.ident("pragma")) {
                i = skip_to_semi(i);
            } else if (t.ident("contract") || t.ident("interface") || t.ident("library")) {
                i = parse_contract(i + 1);
            } else if (t.ident("abstract") && i + 1 < toks_.size() && toks_[i + 1].ident("contract")) {
                i = parse_contract(i + 2);
            } else if (t.ident("function")) {
                i = parse_function(i, "");
            } else if (t.ident("struct") || t.ident("enum")) {
                i = skip_named_block(i + 1);
            } else {
                ++i;  // imports, file-level constants, directives
            }
        }
    }

 private:
    const Tok& at(std::size_t i) const {
        if (i >= toks_.size()) throw SolidityParseError(src_.size(), "unexpected end of file");
        return toks_[i];
    }

    std::size_t skip_to_semi(std::size_t i) const {
        while (i < toks_.size() && !toks_[i].is(";")) ++i;
        return i < toks_.size() ? i + 1 : i;
    }

    // i points at the opening token; returns index of the matching closer.
    std::size_t match(std::size_t i, std::string_view open, std::string_view close) const {
        std::size_t depth = 0;
        for (; i < toks_.size(); ++i) {
            if (toks_[i].is(open)) ++depth;
            else if (toks_[i].is(close) && --depth == 0) return i;
        }
        throw SolidityParseError(src_.size(), std::string("unbalanced '") + std::string(open) + "'");
    }

    std::size_t skip_named_block(std::size_t i) const {
        while (i < toks_.size() && !toks_[i].is("{") && !toks_[i].is(";")) ++i;
        if (i >= toks_.size()) return i;
        return toks_[i].is(";") ? i + 1 : match(i, "{", "}") + 1;
    }

    std::size_t parse_contract(std::size_t i) {
        if (at(i).kind != TokKind::kIdent)
            throw SolidityParseError(at(i).offset, "contract name expected");
        std::string name(at(i).text);
        ++i;
        while (i < toks_.size() && !toks_[i].is("{")) {
            if (toks_[i].is(";")) return i + 1;  // forward declaration, nothing to record
            ++i;
        }
        if (i >= toks_.size()) throw SolidityParseError(src_.size(), "contract body expected");
        std::size_t close = match(i, "{", "}");
        parse_contract_body(i + 1, close, name);
        return close + 1;
    }

    void parse_contract_body(std::size_t i, std::size_t end, const std::string& contract) {
        while (i < end) {
            const Tok& t = toks_[i];
            if (t.ident("function")) {
                i = parse_function(i, contract);
            } else if (t.ident("constructor") ||
                       ((t.ident("receive") || t.ident("fallback")) && i + 1 < end &&
                        toks_[i + 1].is("("))) {
                i = skip_function_like(i + 1);
            } else if (t.ident("modifier")) {
                i = parse_modifier(i, contract);
            } else if (t.ident("event") || t.ident("error") || t.ident("using")) {
                i = skip_to_semi(i);
            } else if (t.ident("struct") || t.ident("enum")) {
                i = skip_named_block(i + 1);
            } else if (t.is(";")) {
                ++i;
            } else {
                i = parse_state_variable(i, end, contract);
            }
        }
    }

    // i points just past the `constructor`/`receive`/`fallback` keyword.
    std::size_t skip_function_like(std::size_t i) {
        std::size_t close = match(i, "(", ")");
        i = close + 1;
        while (i < toks_.size() && !toks_[i].is("{") && !toks_[i].is(";")) {
            if (toks_[i].is("(")) i = match(i, "(", ")");
            ++i;
        }
        if (i >= toks_.size()) throw SolidityParseError(src_.size(), "function body expected");
        return toks_[i].is(";") ? i + 1 : match(i, "{", "}") + 1;
    }

    std::size_t parse_function(std::size_t i, const std::string& contract) {
        std::size_t start_off = toks_[i].offset;
        ++i;
        if (at(i).is("(")) return skip_function_like(i);  // pre-0.6 anonymous fallback
        if (at(i).kind != TokKind::kIdent)
            throw SolidityParseError(at(i).offset, "function name expected");
        FunctionEntry fn;
        fn.name = std::string(at(i).text);
        fn.contract_name = contract;
        fn.source_span.begin = start_off;
        ++i;
        if (!at(i).is("(")) throw SolidityParseError(at(i).offset, "parameter list expected");
        i = match(i, "(", ")") + 1;

        bool saw_visibility = false;
        while (i < toks_.size() && !toks_[i].is("{") && !toks_[i].is(";")) {
            const Tok& h = toks_[i];
            if (h.ident("returns") || h.ident("override")) {
                ++i;
                if (i < toks_.size() && toks_[i].is("(")) i = match(i, "(", ")") + 1;
            } else if (h.ident("public") || h.ident("external") || h.ident("internal") ||
                       h.ident("private")) {
                saw_visibility = true;
                fn.visibility = h.ident("public")     ? Visibility::kPublic
                                : h.ident("external") ? Visibility::kExternal
                                : h.ident("internal") ? Visibility::kInternal
                                                      : Visibility::kPrivate;
                ++i;
            } else if (h.kind == TokKind::kIdent && !header_keywords().count(h.text)) {
                fn.modifiers.emplace_back(h.text);
                ++i;
                if (i < toks_.size() && toks_[i].is("(")) i = match(i, "(", ")") + 1;
            } else {
                ++i;
            }
        }
        if (i >= toks_.size()) throw SolidityParseError(src_.size(), "function body expected");
        if (toks_[i].is(";")) return i + 1;  // interface/abstract declaration, not auditable
        (void)saw_visibility;  // unspecified visibility defaults to public (pre-0.5 sources)
        std::size_t close = match(i, "{", "}");
        fn.body_text = slice_inside(i, close);
        fn.source_span.end = toks_[close].offset + 1;
        out_.functions.push_back(std::move(fn));
        return close + 1;
    }

    std::size_t parse_modifier(std::size_t i, const std::string& contract) {
        std::size_t start_off = toks_[i].offset;
        ++i;
        if (at(i).kind != TokKind::kIdent)
            throw SolidityParseError(at(i).offset, "modifier name expected");
        ModifierEntry m;
        m.name = std::string(at(i).text);
        m.contract_name = contract;
        m.source_span.begin = start_off;
        ++i;
        if (i < toks_.size() && toks_[i].is("(")) i = match(i, "(", ")") + 1;
        while (i < toks_.size() && !toks_[i].is("{") && !toks_[i].is(";")) ++i;
        if (i >= toks_.size()) throw SolidityParseError(src_.size(), "modifier body expected");
        if (toks_[i].is(";")) return i + 1;  // virtual modifier without body
        std::size_t close = match(i, "{", "}");
        m.body_text = slice_inside(i, close);
        m.source_span.end = toks_[close].offset + 1;
        out_.modifiers.push_back(std::move(m));
        return close + 1;
    }

    std::size_t parse_state_variable(std::size_t i, std::size_t end, const std::string& contract) {
        std::size_t start = i;
        std::size_t eq = 0;
        bool has_eq = false;
        int depth = 0;
        while (i < end) {
            const Tok& t = toks_[i];
            if (t.is("(") || t.is("[")) ++depth;
            else if (t.is(")") || t.is("]")) --depth;
            else if (t.is("{") && depth == 0) {
                // Unexpected block in a declaration slot; resynchronize past it.
                i = match(i, "{", "}") + 1;
                return i;
            } else if (t.is("=") && depth == 0 && !has_eq) {
                has_eq = true;
                eq = i;
            } else if (t.is(";") && depth == 0) {
                break;
            }
            ++i;
        }
        if (i >= end) return end;  // tolerated trailing garbage
        std::size_t limit = has_eq ? eq : i;
        for (std::size_t j = limit; j > start; --j) {
            const Tok& cand = toks_[j - 1];
            if (cand.kind == TokKind::kIdent && !header_keywords().count(cand.text) &&
                !is_elementary_type(cand.text)) {
                out_.state_variables.push_back(
                    {std::string(cand.text),
                     {toks_[start].offset, toks_[i].offset + 1},
                     contract});
                break;
            }
        }
        return i + 1;
    }

    std::string slice_inside(std::size_t open, std::size_t close) const {
        std::size_t from = toks_[open].offset + 1;
        std::size_t to = toks_[close].offset;
        return std::string(src_.substr(from, to - from));
    }

    std::string_view src_;
    std::vector<Tok> toks_;
    ParsedSource& out_;
};

std::size_t match_tok(const std::vector<Tok>& toks, std::size_t i, std::string_view open,
                      std::string_view close) {
    std::size_t depth = 0;
    for (; i < toks.size(); ++i) {
        if (toks[i].is(open)) ++depth;
        else if (toks[i].is(close) && --depth == 0) return i;
    }
    return toks.size();  // tolerated: scans run over concatenated bodies
}

// End index (exclusive) of the statement starting at s. Tolerant: returns
// the range end when the statement runs off the token stream.
std::size_t statement_end(const std::vector<Tok>& toks, std::size_t s, std::size_t hi);

std::size_t if_statement_end(const std::vector<Tok>& toks, std::size_t s, std::size_t hi) {
    std::size_t pc = match_tok(toks, s + 1, "(", ")");
    if (pc >= hi) return hi;
    std::size_t te = statement_end(toks, pc + 1, hi);
    if (te < hi && toks[te].ident("else")) return statement_end(toks, te + 1, hi);
    return te;
}

std::size_t statement_end(const std::vector<Tok>& toks, std::size_t s, std::size_t hi) {
    if (s >= hi) return hi;
    const Tok& t = toks[s];
    if (t.is("{")) {
        std::size_t close = match_tok(toks, s, "{", "}");
        return close >= hi ? hi : close + 1;
    }
    if (t.ident("if") && s + 1 < hi && toks[s + 1].is("(")) return if_statement_end(toks, s, hi);
    if ((t.ident("for") || t.ident("while")) && s + 1 < hi && toks[s + 1].is("(")) {
        std::size_t pc = match_tok(toks, s + 1, "(", ")");
        return pc >= hi ? hi : statement_end(toks, pc + 1, hi);
    }
    if (t.ident("unchecked") && s + 1 < hi && toks[s + 1].is("{")) {
        std::size_t close = match_tok(toks, s + 1, "{", "}");
        return close >= hi ? hi : close + 1;
    }
    int depth = 0;
    for (std::size_t i = s; i < hi; ++i) {
        if (toks[i].is("(") || toks[i].is("[") || toks[i].is("{")) ++depth;
        else if (toks[i].is(")") || toks[i].is("]") || toks[i].is("}")) --depth;
        else if (toks[i].is(";") && depth == 0) return i + 1;
    }
    return hi;
}

bool contains_revert(const std::vector<Tok>& toks, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
        if (toks[i].ident("revert") || toks[i].ident("throw")) return true;
    return false;
}

std::string slice_between(std::string_view text, const std::vector<Tok>& toks, std::size_t open,
                          std::size_t close) {
    if (close >= toks.size() || close <= open) return "";
    std::size_t from = toks[open].offset + 1;
    std::size_t to = toks[close].offset;
    return std::string(text.substr(from, to - from));
}

struct Resolver {
    std::map<std::string_view, const FunctionEntry*> callable;  // internal/private only
    std::map<std::string_view, const ModifierEntry*> modifiers;
};

Resolver build_resolver(const ParsedSource& src) {
    Resolver r;
    for (const auto& f : src.functions)
        if (f.visibility == Visibility::kInternal || f.visibility == Visibility::kPrivate)
            r.callable.emplace(f.name, &f);
    for (const auto& m : src.modifiers) r.modifiers.emplace(m.name, &m);
    return r;
}

// Callee names in textual order: `foo(` not preceded by `.`, keywords and
// type casts excluded. Member calls like token.transfer(...) are reported
// under their simple name but are never resolved against this file.
void collect_callees(std::string_view body, std::vector<std::string>& plain,
                     std::vector<std::string>& member) {
    auto toks = lex(body);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != TokKind::kIdent || !toks[i + 1].is("(")) continue;
        std::string_view name = toks[i].text;
        if (statement_keywords().count(name) || is_elementary_type(name)) continue;
        if (i > 0 && toks[i - 1].is(".")) {
            member.emplace_back(name);
            continue;
        }
        if (i > 0 && (toks[i - 1].ident("emit") || toks[i - 1].ident("function"))) continue;
        if (i > 0 && toks[i - 1].ident("new")) {
            member.emplace_back(name);  // reached, but creation is not a same-file call
            continue;
        }
        plain.emplace_back(name);
    }
}

}  // namespace

std::string_view to_string(Visibility v) {
    switch (v) {
        case Visibility::kPublic: return "public";
        case Visibility::kExternal: return "external";
        case Visibility::kInternal: return "internal";
        case Visibility::kPrivate: return "private";
    }
    return "public";
}

std::string_view to_string(CheckKind k) {
    switch (k) {
        case CheckKind::kRequire: return "require";
        case CheckKind::kAssert: return "assert";
        case CheckKind::kIfRevert: return "if_revert";
    }
    return "require";
}

std::optional<int> extract_pragma_major(std::string_view source) {
    auto toks = lex(source);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (!toks[i].ident("pragma") || !toks[i + 1].ident("solidity")) continue;
        // First directive wins; take the lowest 0.X bound mentioned in it.
        std::optional<int> best;
        for (std::size_t j = i + 2; j < toks.size() && !toks[j].is(";"); ++j) {
            if (toks[j].kind == TokKind::kNumber && toks[j].text == "0" && j + 2 < toks.size() &&
                toks[j + 1].is(".") && toks[j + 2].kind == TokKind::kNumber) {
                int minor = 0;
                for (char c : toks[j + 2].text) {
                    if (!is_digit(c)) { minor = -1; break; }
                    minor = minor * 10 + (c - '0');
                }
                if (minor >= 0 && (!best || minor < *best)) best = minor;
            }
        }
        return best;
    }
    return std::nullopt;
}

ParsedSource parse_solidity(std::string_view source) {
    ParsedSource out;
    out.text = std::string(source);
    out.pragma_major = extract_pragma_major(source);
    DeclScanner(source, out).run();

    std::map<std::string_view, int> seen;
    for (const auto& f : out.functions) ++seen[f.name];
    for (const auto& [name, count] : seen)
        if (count > 1)
            out.warnings.push_back("name collision: function " + std::string(name) +
                                   " declared " + std::to_string(count) + " times");
    return out;
}

std::vector<FunctionEntry> enumerate_public_functions(const ParsedSource& src) {
    std::vector<FunctionEntry> out;
    for (const auto& f : src.functions)
        if (f.visibility == Visibility::kPublic || f.visibility == Visibility::kExternal)
            out.push_back(f);
    return out;
}

ExpandedFunction expand_call_chain(const ParsedSource& src, std::string_view name) {
    const FunctionEntry* entry = nullptr;
    for (const auto& f : src.functions)
        if (f.name == name) { entry = &f; break; }
    if (!entry) throw UnknownFunction(std::string(name));

    Resolver resolver = build_resolver(src);
    ExpandedFunction out;
    out.entry = *entry;

    struct Item {
        const std::string* body;
        const std::vector<std::string>* mods;  // null for modifiers
    };
    std::vector<Item> queue{{&entry->body_text, &entry->modifiers}};
    std::set<std::string> visited_fns{entry->name};
    std::set<std::string> visited_mods;
    std::vector<std::string> pieces;

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Item item = queue[qi];
        pieces.push_back(*item.body);

        if (item.mods) {
            for (const auto& mod : *item.mods) {
                out.reached_names.insert(mod);
                if (visited_mods.count(mod)) continue;
                visited_mods.insert(mod);
                auto it = resolver.modifiers.find(mod);
                if (it != resolver.modifiers.end())
                    queue.push_back({&it->second->body_text, nullptr});
            }
        }
        std::vector<std::string> plain, member;
        collect_callees(*item.body, plain, member);
        for (const auto& m : member) out.reached_names.insert(m);
        for (const auto& callee : plain) {
            if (callee != entry->name) out.reached_names.insert(callee);
            if (visited_fns.count(callee)) continue;
            visited_fns.insert(callee);
            auto it = resolver.callable.find(callee);
            if (it != resolver.callable.end())
                queue.push_back({&it->second->body_text, &it->second->modifiers});
        }
    }

    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) out.expanded_source += "\n";
        out.expanded_source += pieces[i];
    }
    return out;
}

std::vector<ExplicitCheck> find_explicit_checks(std::string_view code) {
    auto toks = lex(code);
    std::vector<ExplicitCheck> checks;
    const std::size_t hi = toks.size();

    std::size_t j = 0;
    while (j < hi) {
        const Tok& t = toks[j];
        if ((t.ident("require") || t.ident("assert")) && j + 1 < hi && toks[j + 1].is("(")) {
            std::size_t close = match_tok(toks, j + 1, "(", ")");
            if (close >= hi) break;
            checks.push_back({t.ident("require") ? CheckKind::kRequire : CheckKind::kAssert,
                              {t.offset, toks[close].offset + 1},
                              slice_between(code, toks, j + 1, close)});
            j = close + 1;
            continue;
        }
        if (t.ident("if") && j + 1 < hi && toks[j + 1].is("(")) {
            std::size_t pc = match_tok(toks, j + 1, "(", ")");
            if (pc >= hi) break;
            std::size_t then_end = statement_end(toks, pc + 1, hi);
            if (contains_revert(toks, pc + 1, then_end)) {
                std::size_t span_end =
                    then_end > 0 ? toks[then_end - 1].offset + toks[then_end - 1].text.size()
                                 : t.offset;
                checks.push_back({CheckKind::kIfRevert,
                                  {t.offset, span_end},
                                  slice_between(code, toks, j + 1, pc)});
                // Guards nested inside the counted branch stay uncounted;
                // an else branch is ordinary code and is scanned.
                j = (then_end < hi && toks[then_end].ident("else")) ? then_end + 1 : then_end;
            } else {
                j = pc + 1;
            }
            continue;
        }
        ++j;
    }
    return checks;
}

std::vector<FunctionEntry> find_state_variable_writers(const ParsedSource& src,
                                                       const ExpandedFunction& fn) {
    std::unordered_set<std::string_view> declared;
    for (const auto& sv : src.state_variables) declared.insert(sv.name);

    std::unordered_set<std::string> used;
    for (const auto& tok : lex(fn.expanded_source))
        if (tok.kind == TokKind::kIdent && declared.count(tok.text))
            used.insert(std::string(tok.text));
    if (used.empty()) return {};

    static const std::unordered_set<std::string_view> assign_ops = {
        "=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>="};

    std::vector<FunctionEntry> writers;
    for (const auto& f : src.functions) {
        // The chain's own members are already in expanded_source; only
        // functions outside it qualify as writers.
        if (f.source_span.begin == fn.entry.source_span.begin) continue;
        if (fn.reached_names.count(f.name)) continue;
        auto toks = lex(f.body_text);
        bool writes = false;
        for (std::size_t i = 0; i < toks.size() && !writes; ++i) {
            if (toks[i].kind != TokKind::kIdent) continue;
            if (toks[i].ident("delete") && i + 1 < toks.size() &&
                toks[i + 1].kind == TokKind::kIdent && used.count(std::string(toks[i + 1].text))) {
                writes = true;
                break;
            }
            if (!used.count(std::string(toks[i].text))) continue;
            if (i > 0 && toks[i - 1].is(".")) continue;  // member of some other object
            std::size_t j = i + 1;
            while (j < toks.size()) {
                if (toks[j].is("[")) {
                    j = match_tok(toks, j, "[", "]");
                    if (j >= toks.size()) break;
                    ++j;
                } else if (toks[j].is(".") && j + 1 < toks.size() &&
                           toks[j + 1].kind == TokKind::kIdent) {
                    j += 2;
                } else {
                    break;
                }
            }
            if (j < toks.size() && toks[j].kind == TokKind::kPunct &&
                assign_ops.count(toks[j].text))
                writes = true;
        }
        if (writes) writers.push_back(f);
    }
    return writers;
}

}  // namespace logicscan
