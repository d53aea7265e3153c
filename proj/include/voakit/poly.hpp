#pragma once
// Dense univariate polynomials over Q, used as numerator/denominator of the
// level-dependent scalars. Coefficients are stored ascending; the invariant is
// that the leading coefficient (back of the vector) is nonzero, and the zero
// polynomial is the empty vector.

#include "rational.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace voakit {

class Poly {
    std::vector<Rational> c_;  // c_[i] multiplies k^i
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

public:
    Poly() = default;
    Poly(const Rational& a) { if (a != 0) c_.push_back(a); }
    Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static Poly var() { return Poly(std::vector<Rational>{0, 1}); }  // k

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    const Rational& lead() const { assert(!c_.empty()); return c_.back(); }
    Rational coeff(int i) const {
        return (i >= 0 && i < int(c_.size())) ? c_[size_t(i)] : Rational(0);
    }
    bool is_constant() const { return c_.size() <= 1; }
    Rational constant() const { return coeff(0); }

    Poly operator+(const Poly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<Rational> r = c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const Rational& a) const {
        std::vector<Rational> r = c_;
        for (auto& x : r) x *= a;
        return Poly(std::move(r));
    }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Euclidean division; denominator-free use requires d nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& n, const Poly& d) {
        assert(!d.is_zero());
        Poly q, r = n;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            Rational f = r.lead() / d.lead();
            std::vector<Rational> t(size_t(shift) + 1, Rational(0));
            t.back() = f;
            Poly term(std::move(t));
            q = q + term;
            r = r - term * d;
        }
        return {q, r};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / lead());
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Rational eval(const Rational& k) const {
        Rational v = 0;
        for (size_t i = c_.size(); i-- > 0;) v = v * k + c_[i];
        return v;
    }

    std::string str(const std::string& var = "k") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            Rational a = coeff(i);
            if (a == 0) continue;
            bool first = s.empty();
            if (!first) s += (a > 0) ? " + " : " - ";
            Rational abs_a = first ? a : Rational(abs(a));
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            if (mono.empty()) s += to_string(abs_a);
            else if (abs_a == 1) s += mono;
            else if (abs_a == -1) s += "-" + mono;
            else s += to_string(abs_a) + "*" + mono;
        }
        return s;
    }
};

}  // namespace voakit
