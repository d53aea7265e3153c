#pragma once
// Scalars of the workbench: rational functions in the level k, kept in the
// canonical form num/den with gcd(num,den)=1 and den monic. Exact throughout;
// evaluation at a numeric level raises PoleError on a pole.

#include "poly.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace voakit {

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Scalar {
    Poly num_, den_;  // den_ monic, nonzero; gcd(num_,den_) = 1; 0 is 0/1
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("scalar with zero denominator");
        if (num_.is_zero()) { den_ = Poly(Rational(1)); return; }
        Poly g = Poly::gcd(num_, den_);
        num_ = Poly::divmod(num_, g).first;
        den_ = Poly::divmod(den_, g).first;
        Rational lead = den_.lead();
        num_ = num_ * (Rational(1) / lead);
        den_ = den_ * (Rational(1) / lead);
    }

public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(const Rational& a) : num_(a), den_(Rational(1)) {}
    Scalar(long a) : num_(Rational(a)), den_(Rational(1)) {}
    Scalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
    explicit Scalar(Poly n) : num_(std::move(n)), den_(Rational(1)) {}

    static Scalar level() { return Scalar(Poly::var()); }  // the symbol k

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant() const {
        if (!is_constant()) throw std::domain_error("scalar is not constant: " + str());
        return num_.constant();
    }
    bool is_polynomial() const { return den_.is_constant(); }

    Scalar operator+(const Scalar& o) const { return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Scalar operator-(const Scalar& o) const { return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Scalar operator-() const { Scalar s = *this; s.num_ = -s.num_; return s; }
    Scalar operator*(const Scalar& o) const { return Scalar(num_ * o.num_, den_ * o.den_); }
    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw std::domain_error("scalar division by zero");
        return Scalar(num_ * o.den_, den_ * o.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Canonical form makes equality structural.
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Rational eval(const Rational& k) const {
        Rational d = den_.eval(k);
        if (d == 0) throw PoleError("pole at k = " + to_string(k) + " in " + str());
        return num_.eval(k) / d;
    }

    std::string str() const {
        if (is_zero()) return "0";
        auto wrap = [](const Poly& p) {
            std::string s = p.str();
            return (p.degree() > 0 && s.find(' ') != std::string::npos) ? "(" + s + ")" : s;
        };
        if (den_ == Poly(Rational(1))) return wrap(num_);
        return wrap(num_) + "/" + wrap(den_);
    }
};

inline Scalar pow(Scalar base, long e) {
    if (e < 0) return Scalar(1) / pow(base, -e);
    Scalar r(1);
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

// --- scalar literal grammar -------------------------------------------------
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | atom ('^' int)?
//   atom   := rational | 'k' | '(' expr ')'
// Accepted by OPE files, case data and the CLI.

namespace detail {
struct ScalarParser {
    const std::string& s;
    size_t i = 0;
    explicit ScalarParser(const std::string& src) : s(src) {}
    void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eat(char c) { skip(); if (i < s.size() && s[i] == c) { ++i; return true; } return false; }
    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("scalar parse error at offset " + std::to_string(i) +
                                    " in '" + s + "': " + why);
    }
    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    Scalar term() {
        Scalar v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) v = v / unary();
            else return v;
        }
    }
    Scalar unary() {
        if (eat('-')) return -unary();
        Scalar v = atom();
        if (eat('^')) {
            skip();
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) fail("exponent expected");
            long e = std::stol(s.substr(i, j - i));
            i = j;
            v = pow(v, e);
        }
        return v;
    }
    Scalar atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            Scalar v = expr();
            if (!eat(')')) fail("')' expected");
            return v;
        }
        if (s[i] == 'k') { ++i; return Scalar::level(); }
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        if (j == i) fail("number or 'k' expected");
        Rational r = parse_rational(s.substr(i, j - i));
        i = j;
        return Scalar(r);
    }
};
}  // namespace detail

inline Scalar parse_scalar(const std::string& src) {
    detail::ScalarParser p(src);
    Scalar v = p.expr();
    p.skip();
    if (p.i != src.size()) p.fail("trailing input");
    return v;
}

}  // namespace voakit
