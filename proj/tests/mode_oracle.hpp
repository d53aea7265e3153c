#pragma once
// Test-only oracle for free-field contexts: computes n-th products by honest
// mode expansion on an explicit Fock basis. Completely independent of the
// engine's Wick/reordering machinery -- the only shared input is the list of
// generators and their two-point contractions eps(g,h) (the vacuum
// coefficient of g_(0)h), and fields of composite states are built with the
// textbook normally ordered product of fields, split at mode >= 0.

#include <voakit/state.hpp>

#include <map>
#include <vector>

namespace oracle {

using voakit::Factor;
using voakit::Monomial;
using voakit::Rational;
using voakit::State;

struct FreeSpec {
    std::vector<int> parity;               // per generator
    std::vector<Rational> weight;          // per generator
    std::map<std::pair<int, int>, Rational> eps;  // [g_m, h_n]_+- = eps(g,h) delta_{m+n+1,0}
};

struct ModeOp {
    int gen;
    long mode;  // <= -1 for creation operators in the basis
    auto operator<=>(const ModeOp&) const = default;
};

using ModeMono = std::vector<ModeOp>;        // sorted ascending
using FockVec = std::map<ModeMono, Rational>;

inline void addv(FockVec& v, const ModeMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = v.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

inline Rational weight_of(const FreeSpec& fs, const ModeMono& m) {
    Rational w = 0;
    for (auto& op : m) w += fs.weight[size_t(op.gen)] - op.mode - 1;
    return w;
}

// Applies g_(mode) to a single basis monomial.
inline void apply_mode_mono(const FreeSpec& fs, int g, long mode, const ModeMono& m,
                            const Rational& coef, FockVec& out) {
    int pg = fs.parity[size_t(g)];
    if (mode <= -1) {  // creation: insert into sorted position, Koszul signs
        ModeOp op{g, mode};
        int sign = 1;
        size_t pos = 0;
        while (pos < m.size() && m[pos] < op) {
            if (pg && fs.parity[size_t(m[pos].gen)]) sign = -sign;
            ++pos;
        }
        if (pg && pos < m.size() && m[pos] == op) return;  // fermionic square
        ModeMono r = m;
        r.insert(r.begin() + long(pos), op);
        addv(out, r, coef * sign);
        return;
    }
    // annihilation: commute through, picking up contractions
    int sign = 1;
    for (size_t i = 0; i < m.size(); ++i) {
        auto it = fs.eps.find({g, m[i].gen});
        if (it != fs.eps.end() && mode + m[i].mode + 1 == 0) {
            ModeMono r = m;
            r.erase(r.begin() + long(i));
            addv(out, r, coef * it->second * sign);
        }
        if (pg && fs.parity[size_t(m[i].gen)]) sign = -sign;
    }
    // remaining annihilator hits the vacuum: nothing
}

inline FockVec apply_mode(const FreeSpec& fs, int g, long mode, const FockVec& v) {
    FockVec out;
    for (auto& [m, c] : v) apply_mode_mono(fs, g, mode, m, c, out);
    return out;
}

inline Rational falling(long n, int d) {
    Rational f = 1;
    for (int i = 0; i < d; ++i) f *= (n - i);
    return f;
}

inline Rational weight_of_mono(const FreeSpec& fs, const Monomial& m) {
    Rational w = 0;
    for (auto& f : m.f) w += fs.weight[size_t(f.gen)] + f.der;
    return w;
}

// Coefficient of z^{-n-1} in Y(state-of-monomial, z), applied to v.
inline FockVec field_mode(const FreeSpec& fs, const Monomial& m, long n, const FockVec& v);

inline FockVec single_field_mode(const FreeSpec& fs, const Factor& f, long n,
                                 const FockVec& v) {
    // Y(d^d g, z) = d_z^d Y(g,z): z^{-n-1} coefficient is (-1)^d fall(n,d) g_(n-d)
    Rational c = falling(n, f.der) * ((f.der % 2) ? -1 : 1);
    if (c == 0) return {};
    FockVec out = apply_mode(fs, f.gen, n - f.der, v);
    FockVec scaled;
    for (auto& [m, x] : out) addv(scaled, m, x * c);
    return scaled;
}

inline long floor_long(const Rational& r) {
    return voakit::to_long(voakit::floor_rat(r));
}

inline FockVec field_mode(const FreeSpec& fs, const Monomial& m, long n, const FockVec& v) {
    if (m.is_vacuum()) return n == -1 ? v : FockVec{};
    Factor f = m.f[0];
    Monomial rest = m.rest();
    if (rest.f.empty()) return single_field_mode(fs, f, n, v);
    // :F G:_n = sum_{k<=-1} F_k G_{n-1-k} + p(F,G) sum_{k>=0} G_{n-1-k} F_k
    int pF = fs.parity[size_t(f.gen)];
    int pG = 0;
    for (auto& x : rest.f) pG ^= fs.parity[size_t(x.gen)];
    Rational wF = fs.weight[size_t(f.gen)] + f.der;
    Rational wG = weight_of_mono(fs, rest);
    FockVec out;
    // creation part of F: G_{n-1-k} v nonzero needs n-1-k <= wt(v)+wG-1
    for (auto& [bm, bc] : v) {
        FockVec vv;
        vv.emplace(bm, bc);
        long kmin = n - floor_long(weight_of(fs, bm) + wG);
        for (long k = -1; k >= kmin; --k) {
            FockVec g = field_mode(fs, rest, n - 1 - k, vv);
            if (g.empty()) continue;
            FockVec fg = single_field_mode(fs, f, k, g);
            for (auto& [mm, cc] : fg) addv(out, mm, cc);
        }
        // annihilation part: F_k vv nonzero needs k <= wt(vv)+wF-1
        long kmax = floor_long(weight_of(fs, bm) + wF - 1);
        for (long k = 0; k <= kmax; ++k) {
            FockVec fv = single_field_mode(fs, f, k, vv);
            if (fv.empty()) continue;
            FockVec gf = field_mode(fs, rest, n - 1 - k, fv);
            int sgn = (pF & pG) ? -1 : 1;
            for (auto& [mm, cc] : gf) addv(out, mm, cc * sgn);
        }
    }
    return out;
}

// The Fock vector of a monomial, built with creation operators only:
// (d^d g)_(-1) = d! g_(-1-d)
inline FockVec vec_of_mono(const FreeSpec& fs, const Monomial& m) {
    FockVec v;
    v.emplace(ModeMono{}, Rational(1));
    for (size_t i = m.f.size(); i-- > 0;) {
        Factor f = m.f[i];
        Rational fac = voakit::factorial(f.der);
        FockVec nv = apply_mode(fs, f.gen, -1 - f.der, v);
        v.clear();
        for (auto& [mm, cc] : nv) addv(v, mm, cc * fac);
    }
    return v;
}

inline FockVec vec_of_state(const FreeSpec& fs, const State& s) {
    FockVec v;
    for (auto& [m, c] : s.terms()) {
        FockVec mv = vec_of_mono(fs, m);
        Rational x = c.constant();  // free-field scalars are plain rationals
        for (auto& [mm, cc] : mv) addv(v, mm, cc * x);
    }
    return v;
}

// The oracle product: a_(n) b as a Fock vector.
inline FockVec oracle_nth(const FreeSpec& fs, const Monomial& a, const Monomial& b, long n) {
    return field_mode(fs, a, n, vec_of_mono(fs, b));
}

}  // namespace oracle
