#pragma once
// Commutant (coset) toolkit: membership tests against a Heisenberg field,
// Virasoro/primary structure checks, and the C1 reduction bookkeeping used to
// certify that a zero-mode image is a scalar multiple of a single-factor
// state modulo C1 terms.

#include "voa.hpp"

namespace voakit {

// a lies in Com(H, V) for the Heisenberg algebra generated by h iff
// h_(n)a = 0 for all n >= 0.
inline bool commutant_test(const VoaContext& ctx, const State& h, const State& a,
                           std::string* why = nullptr) {
    Rational wa = ctx.weight_of(a);
    long nmax = std::max(to_long(floor_rat(ctx.weight_of(h) + wa - 1)),
                         to_long(floor_rat(wa)) + 1);
    for (long n = 0; n <= nmax; ++n) {
        State v = ctx.nth(h, a, n);
        if (!v.is_zero()) {
            if (why) *why = "h_(" + std::to_string(n) + ")a = " + ctx.state_str(v);
            return false;
        }
    }
    return true;
}

inline bool verify_identity(const State& lhs, const State& rhs, const VoaContext& ctx,
                            std::string* why = nullptr) {
    if (lhs == rhs) return true;
    if (why) *why = "difference = " + ctx.state_str(lhs - rhs);
    return false;
}

struct VirasoroReport {
    bool ok = false;
    Scalar central_charge;
    std::string detail;
};

// Checks L_(0)L = TL, L_(1)L = 2L, L_(n)L = 0 for n in {2} u [4, bound],
// and reads off c from L_(3)L = (c/2)1.
inline VirasoroReport virasoro_check(const VoaContext& ctx, const State& L) {
    VirasoroReport r;
    if (ctx.weight_of(L) != 2) {
        r.detail = "not a weight-2 state";
        return r;
    }
    if (ctx.nth(L, L, 0) != ctx.deriv(L)) {
        r.detail = "L_(0)L != TL";
        return r;
    }
    if (ctx.nth(L, L, 1) != L * Scalar(2)) {
        r.detail = "L_(1)L != 2L";
        return r;
    }
    if (!ctx.nth(L, L, 2).is_zero()) {
        r.detail = "L_(2)L != 0";
        return r;
    }
    State top = ctx.nth(L, L, 3);
    r.central_charge = top.coeff(Monomial()) * Scalar(2);
    if (top != State::vacuum(r.central_charge * Scalar(rat(1, 2)))) {
        r.detail = "L_(3)L not proportional to the vacuum";
        return r;
    }
    r.ok = true;
    return r;
}

struct PrimaryReport {
    bool is_primary = false;
    Scalar weight;  // the eigenvalue read off from L_(1)a
    std::string detail;
};

// a primary for L: L_(0)a = Ta, L_(1)a = delta a, L_(n)a = 0 for n >= 2.
inline PrimaryReport primary_check(const VoaContext& ctx, const State& L, const State& a) {
    PrimaryReport r;
    if (ctx.nth(L, a, 0) != ctx.deriv(a)) {
        r.detail = "L_(0)a != Ta";
        return r;
    }
    State v1 = ctx.nth(L, a, 1);
    // read off delta from any monomial of a
    auto& [m0, c0] = *a.terms().begin();
    r.weight = v1.coeff(m0) / c0;
    if (v1 != a * r.weight) {
        r.detail = "L_(1)a is not a multiple of a";
        return r;
    }
    long nmax = to_long(floor_rat(Rational(2) + ctx.weight_of(a) - 1));
    for (long n = 2; n <= nmax; ++n)
        if (!ctx.nth(L, a, n).is_zero()) {
            r.detail = "L_(" + std::to_string(n) + ")a != 0";
            return r;
        }
    r.is_primary = true;
    return r;
}

struct C1Report {
    bool ok = false;              // sector matched, residual a single tower
    Scalar leading_coefficient;   // coefficient of the deepest residual term
    Factor residual_factor;       // that term (d^s gen)
    State residual;               // all single-factor terms
    State c1_part;                // certified C1: factor-length >= 2 monomials
    std::string detail;
};

// Splits a into normally ordered monomials of factor-length >= 2 (manifestly
// in C1: the leading factor has positive weight and enters via its (-1)-mode)
// plus the single-factor residual tower; checks the stated charge sector.
inline C1Report c1_reduce(const VoaContext& ctx, const State& a,
                          const Rational& charge_sector, size_t which_charge = 0) {
    C1Report r;
    int tower_gen = -1;
    for (auto& [m, c] : a.terms()) {
        if (ctx.charge_of(m, which_charge) != charge_sector) {
            r.detail = "term " + ctx.mono_str(m) + " outside the stated charge sector";
            return r;
        }
        if (m.length() >= 2) {
            r.c1_part.add(m, c);
        } else if (m.length() == 1) {
            if (tower_gen != -1 && m.f[0].gen != tower_gen) {
                r.detail = "residual spans more than one single-generator tower";
                return r;
            }
            tower_gen = m.f[0].gen;
            if (r.residual.is_zero() || m.f[0].der > r.residual_factor.der) {
                r.residual_factor = m.f[0];
                r.leading_coefficient = c;
            }
            r.residual.add(m, c);
        } else {
            r.detail = "vacuum term cannot lie in the charge sector";
            return r;
        }
    }
    r.ok = true;
    return r;
}

// The residual coefficient of U_(0)(d^i gen) on d^(wt(U)+i-1) gen, modulo C1.
inline C1Report c1_leading_coefficient(const VoaContext& ctx, const State& U,
                                       const std::string& target_gen, int i,
                                       size_t which_charge = 0) {
    int gen = ctx.index_of(target_gen);
    State di = ctx.gen_state(gen, i);
    State v = ctx.nth(U, di, 0);
    C1Report r = c1_reduce(ctx, v, ctx.charge_of(di.terms().begin()->first, which_charge),
                           which_charge);
    if (!r.ok) return r;
    Rational s = ctx.weight_of(U) + i - 1;
    Factor expect{gen, int(to_long(s))};
    if (r.residual.is_zero()) {  // the residual tower cancelled entirely
        r.leading_coefficient = Scalar(0);
        r.residual_factor = expect;
        return r;
    }
    if (r.residual != State::single(Monomial({expect}), r.leading_coefficient) ||
        r.residual_factor != expect) {
        r.ok = false;
        r.detail = "residual is not a multiple of " + ctx.factor_str(expect) + ": " +
                   ctx.state_str(r.residual);
    }
    return r;
}

}  // namespace voakit
