#pragma once
// States of a vertex algebra over the scalar field Q(k): linear combinations
// of canonical normally ordered monomials. A monomial is a right-nested
// product :f1 (f2 (... fr)): of factors f = d^m(generator), stored flat and
// kept in canonical order (generator index ascending; for equal generators,
// derivative order descending). The empty monomial is the vacuum.

#include "scalar.hpp"

#include <map>

namespace voakit {

struct Factor {
    int gen = 0;  // generator index in the context
    int der = 0;  // number of derivatives applied
    auto operator<=>(const Factor&) const = default;
};

// Canonical left-to-right order inside a monomial.
inline bool factor_precedes(const Factor& a, const Factor& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.der > b.der;
}

struct Monomial {
    std::vector<Factor> f;
    Monomial() = default;
    explicit Monomial(std::vector<Factor> fs) : f(std::move(fs)) {}
    bool is_vacuum() const { return f.empty(); }
    size_t length() const { return f.size(); }
    bool is_canonical() const {
        for (size_t i = 1; i < f.size(); ++i)
            if (!factor_precedes(f[i - 1], f[i]) && f[i - 1] != f[i]) return false;
        return true;
    }
    Monomial rest() const { return Monomial({f.begin() + 1, f.end()}); }
    Monomial prepend(const Factor& x) const {
        std::vector<Factor> g;
        g.reserve(f.size() + 1);
        g.push_back(x);
        g.insert(g.end(), f.begin(), f.end());
        return Monomial(std::move(g));
    }
    auto operator<=>(const Monomial&) const = default;
};

class State {
    std::map<Monomial, Scalar> t_;

public:
    State() = default;
    static State vacuum(const Scalar& c = Scalar(1)) {
        State s;
        s.add(Monomial(), c);
        return s;
    }
    static State single(const Monomial& m, const Scalar& c = Scalar(1)) {
        State s;
        s.add(m, c);
        return s;
    }

    const std::map<Monomial, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    void add(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    State& operator+=(const State& o) {
        for (auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    State& operator-=(const State& o) {
        for (auto& [m, c] : o.t_) add(m, -c);
        return *this;
    }
    State operator+(const State& o) const { State r = *this; r += o; return r; }
    State operator-(const State& o) const { State r = *this; r -= o; return r; }
    State operator-() const { return State() - *this; }
    State operator*(const Scalar& c) const {
        State r;
        for (auto& [m, x] : t_) r.add(m, x * c);
        return r;
    }
    bool operator==(const State& o) const { return t_ == o.t_; }
    bool operator!=(const State& o) const { return !(*this == o); }

    Scalar coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Scalar(0) : it->second;
    }

    // Specializes every coefficient at a numeric level.
    State at_level(const Rational& k) const {
        State r;
        for (auto& [m, c] : t_) r.add(m, Scalar(c.eval(k)));
        return r;
    }
};

inline State operator*(const Scalar& c, const State& s) { return s * c; }

}  // namespace voakit
