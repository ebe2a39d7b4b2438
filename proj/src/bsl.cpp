#include "bsl.hpp"

namespace logicscan {

const char* const kBslGrammar =
    "spec ::= \"order\" \"(\" \"check\" \"[\" [cond {\",\" cond}] \"]\" \",\" action \")\" ; "
    "cond and action match [a-z][a-z0-9_]*";

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_name_char(char c) { return is_lower(c) || (c >= '0' && c <= '9') || c == '_'; }
bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Parser {
 public:
    explicit Parser(std::string_view text) : text_(text) {}

    BslParseResult run() {
        skip_ws();
        if (!keyword("order")) return fail("'order'");
        skip_ws();
        if (!punct('(')) return fail("'('");
        skip_ws();
        if (!keyword("check")) return fail("'check'");
        skip_ws();
        if (!punct('[')) return fail("'['");
        skip_ws();

        BslSpec spec;
        if (!punct(']')) {
            for (;;) {
                std::string cond;
                if (!name(cond)) return fail("identifier");
                spec.checks.push_back(std::move(cond));
                skip_ws();
                if (punct(',')) {
                    skip_ws();
                    continue;
                }
                if (punct(']')) break;
                return fail("',' or ']'");
            }
        }
        skip_ws();
        if (!punct(',')) return fail("','");
        skip_ws();
        if (!name(spec.action)) return fail("identifier");
        skip_ws();
        if (!punct(')')) return fail("')'");
        skip_ws();
        if (pos_ != text_.size()) return fail("end of input");
        return spec;
    }

 private:
    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    bool keyword(std::string_view kw) {
        if (text_.substr(pos_, kw.size()) != kw) return false;
        // "orderx" must not lex as the keyword plus garbage.
        std::size_t after = pos_ + kw.size();
        if (after < text_.size() && is_name_char(text_[after])) return false;
        pos_ = after;
        return true;
    }

    bool punct(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool name(std::string& out) {
        if (pos_ >= text_.size() || !is_lower(text_[pos_])) return false;
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        out.assign(text_.substr(start, pos_ - start));
        return true;
    }

    BslParseResult fail(std::string expected) const {
        return BslSyntaxError{pos_, std::move(expected)};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

bool is_bsl_name(std::string_view token) {
    if (token.empty() || !is_lower(token[0])) return false;
    for (char c : token)
        if (!is_name_char(c)) return false;
    return true;
}

std::string BslSyntaxError::message() const {
    return "syntax error at offset " + std::to_string(offset) + ": expected " + expected;
}

BslParseResult parse_bsl(std::string_view text) { return Parser(text).run(); }

std::string print_bsl(const BslSpec& spec) {
    std::string out = "order(check[";
    for (std::size_t i = 0; i < spec.checks.size(); ++i) {
        if (i) out += ", ";
        out += spec.checks[i];
    }
    out += "], ";
    out += spec.action;
    out += ")";
    return out;
}

}  // namespace logicscan
