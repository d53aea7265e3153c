#pragma once
// The state-expression language:
//
//   expr   := term (('+'|'-') term)*
//   term   := [scalar '*'] factor+          (no factors: scalar multiple of 1)
//   factor := name | 'D' ['^' int] '(' factor ')' | ':' factor factor+ ':'
//
// Adjacent factors multiply right-nested with the normally ordered product.
// Scalars follow the scalar literal grammar ('k' is the level and is reserved;
// it cannot be a generator name). Evaluating an expression canonicalizes it,
// and state_str() output parses back to the same state.

#include "voa.hpp"

#include <cctype>

namespace voakit {

class ExprParser {
public:
    ExprParser(const VoaContext& ctx, std::map<std::string, State> names = {})
        : ctx_(ctx), names_(std::move(names)) {}

    State parse(const std::string& src) const {
        // ':' inside a normal ordering may open a nested group or close the
        // current one; try the nested-first reading of the whole input and
        // fall back to the close-first reading.
        try {
            return parse_with(src, true);
        } catch (const std::invalid_argument&) {
            return parse_with(src, false);
        }
    }

    State parse_with(const std::string& src, bool nested_first) const {
        Cursor c{src, 0, nested_first};
        State v = expr(c);
        skip(c);
        if (c.i != src.size()) fail(c, "trailing input");
        return v;
    }

private:
    const VoaContext& ctx_;
    std::map<std::string, State> names_;

    struct Cursor {
        const std::string& s;
        size_t i;
        bool nested_first = true;
    };
    static void skip(Cursor& c) {
        while (c.i < c.s.size() && std::isspace((unsigned char)c.s[c.i])) ++c.i;
    }
    static bool eat(Cursor& c, char ch) {
        skip(c);
        if (c.i < c.s.size() && c.s[c.i] == ch) {
            ++c.i;
            return true;
        }
        return false;
    }
    static char peek(Cursor& c) {
        skip(c);
        return c.i < c.s.size() ? c.s[c.i] : '\0';
    }
    [[noreturn]] static void fail(const Cursor& c, const std::string& why) {
        throw std::invalid_argument("state expression error at offset " +
                                    std::to_string(c.i) + " in '" + c.s + "': " + why);
    }

    static bool scalar_start(Cursor& c) {
        char ch = peek(c);
        if (std::isdigit((unsigned char)ch) || ch == '(') return true;
        if (ch == 'k') {  // 'k' only if not part of a longer identifier
            size_t j = c.i + 1;
            return j >= c.s.size() || !(std::isalnum((unsigned char)c.s[j]) || c.s[j] == '_');
        }
        return false;
    }

    static std::string ident(Cursor& c) {
        skip(c);
        size_t j = c.i;
        while (j < c.s.size() && (std::isalnum((unsigned char)c.s[j]) || c.s[j] == '_')) ++j;
        std::string r = c.s.substr(c.i, j - c.i);
        c.i = j;
        return r;
    }

    State expr(Cursor& c) const {
        State v;
        if (eat(c, '-')) v = -term(c);
        else v = term(c);
        for (;;) {
            if (eat(c, '+')) v += term(c);
            else if (eat(c, '-')) v -= term(c);
            else return v;
        }
    }

    // scalar sub-expression that stops at a '*' followed by a factor start
    Scalar scalar(Cursor& c) const {
        Scalar v = sunary(c);
        for (;;) {
            skip(c);
            if (c.i < c.s.size() && c.s[c.i] == '*') {
                size_t save = c.i;
                ++c.i;
                if (!scalar_start(c)) {
                    c.i = save;  // this '*' separates coefficient from factors
                    return v;
                }
                v *= sunary(c);
            } else if (c.i < c.s.size() && c.s[c.i] == '/') {
                ++c.i;
                v = v / sunary(c);
            } else {
                return v;
            }
        }
    }
    Scalar sunary(Cursor& c) const {
        if (eat(c, '-')) return -sunary(c);
        return satom(c);
    }
    Scalar satom(Cursor& c) const {
        skip(c);
        if (eat(c, '(')) {
            Scalar inner = scalar_full(c);
            if (!eat(c, ')')) fail(c, "')' expected in scalar");
            return spow(c, inner);
        }
        char ch = peek(c);
        if (ch == 'k') {
            ++c.i;
            return spow(c, Scalar::level());
        }
        size_t j = c.i;
        while (j < c.s.size() && std::isdigit((unsigned char)c.s[j])) ++j;
        if (j == c.i) fail(c, "scalar atom expected");
        Rational r = parse_rational(c.s.substr(c.i, j - c.i));
        c.i = j;
        return spow(c, Scalar(r));
    }
    Scalar spow(Cursor& c, Scalar v) const {
        if (eat(c, '^')) {
            size_t j = c.i;
            while (j < c.s.size() && std::isdigit((unsigned char)c.s[j])) ++j;
            if (j == c.i) fail(c, "exponent expected");
            long e = std::stol(c.s.substr(c.i, j - c.i));
            c.i = j;
            return pow(v, e);
        }
        return v;
    }
    // inside parens: ordinary scalar expression incl. +/-
    Scalar scalar_full(Cursor& c) const {
        Scalar v = scalar(c);
        for (;;) {
            if (eat(c, '+')) v += scalar(c);
            else if (eat(c, '-')) v -= scalar(c);
            else return v;
        }
    }

    bool factor_start(Cursor& c) const {
        char ch = peek(c);
        if (ch == 'k' && scalar_start(c)) return false;  // lone 'k' is the level
        return ch == ':' || ch == 'D' || std::isalpha((unsigned char)ch);
    }

    State term(Cursor& c) const {
        Scalar coeff(1);
        bool had_coeff = scalar_start(c);
        if (had_coeff) {
            coeff = scalar(c);
            eat(c, '*');  // optional separator between coefficient and factors
        }
        std::vector<State> factors;
        while (factor_start(c)) factors.push_back(factor(c));
        if (!had_coeff && factors.empty()) fail(c, "term expected");
        State v = State::vacuum(coeff);
        for (size_t i = factors.size(); i-- > 0;) v = ctx_.nop(factors[i], v);
        return v;
    }

    State factor(Cursor& c) const {
        skip(c);
        if (eat(c, ':')) {
            // a ':' inside may open a nested ordering or close this one; try
            // the nested reading first and backtrack on failure
            std::vector<State> fs;
            for (;;) {
                char ch = peek(c);
                if (ch == ':') {
                    if (fs.empty()) {
                        fs.push_back(factor(c));
                        continue;
                    }
                    if (!c.nested_first) break;  // close-first policy
                    size_t save = c.i;
                    try {
                        fs.push_back(factor(c));
                        continue;
                    } catch (const std::invalid_argument&) {
                        c.i = save;
                        break;
                    }
                } else if (ch == 'D' || std::isalpha((unsigned char)ch)) {
                    fs.push_back(factor(c));
                } else {
                    break;
                }
            }
            if (!eat(c, ':')) fail(c, "closing ':' expected");
            if (fs.empty()) fail(c, "empty normal ordering");
            State v = fs.back();
            for (size_t i = fs.size() - 1; i-- > 0;) v = ctx_.nop(fs[i], v);
            return v;
        }
        std::string name = ident(c);
        if (name.empty()) fail(c, "factor expected");
        if (name == "D") {
            long e = 1;
            if (eat(c, '^')) {
                size_t j = c.i;
                while (j < c.s.size() && std::isdigit((unsigned char)c.s[j])) ++j;
                if (j == c.i) fail(c, "derivative order expected");
                e = std::stol(c.s.substr(c.i, j - c.i));
                c.i = j;
            }
            if (!eat(c, '(')) fail(c, "'(' expected after D");
            State inner = factor(c);
            if (!eat(c, ')')) fail(c, "')' expected after D(...)");
            return ctx_.deriv(inner, int(e));
        }
        auto it = names_.find(name);
        if (it != names_.end()) return it->second;
        return ctx_.gen_state(name);  // throws on unknown names
    }
};

}  // namespace voakit
