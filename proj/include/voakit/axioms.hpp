#pragma once
// Randomized verification that a context's OPE table generates a consistent
// vertex superalgebra: skew symmetry, Borcherds identity instances,
// derivative compatibilities, vacuum axioms and grading additivity, all
// checked on randomly sampled canonical monomials.

#include "voa.hpp"

namespace voakit {

struct AxiomReport {
    long checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Random canonical monomial with 1..maxlen factors, derivatives <= maxder and
// total weight <= maxweight.
inline Monomial random_monomial(const VoaContext& ctx, std::mt19937_64& rng,
                                int maxlen = 3, int maxder = 2,
                                const Rational& maxweight = Rational(4)) {
    std::uniform_int_distribution<int> len(1, maxlen), gen(0, int(ctx.gens.size()) - 1),
        der(0, maxder);
    for (;;) {
        std::vector<Factor> fs(size_t(len(rng)));
        for (auto& f : fs) f = {gen(rng), der(rng)};
        std::sort(fs.begin(), fs.end(),
                  [](const Factor& a, const Factor& b) { return factor_precedes(a, b); });
        bool bad = false;  // identical adjacent odd factors square to zero
        for (size_t i = 1; i < fs.size(); ++i)
            if (fs[i] == fs[i - 1] && ctx.gens[size_t(fs[i].gen)].parity) bad = true;
        Monomial m(std::move(fs));
        if (!bad && ctx.weight_of(m) <= maxweight) return m;
    }
}

namespace detail {
inline State skew_rhs(const VoaContext& ctx, const State& a, const State& b, long n,
                      long jmax) {
    int p = (ctx.parity_of(a) & ctx.parity_of(b)) ? -1 : 1;
    State r;
    for (long j = 0; n + j <= jmax; ++j) {
        State inner = ctx.nth(b, a, n + j);
        if (inner.is_zero()) continue;
        int sgn = ((n + j + 1) % 2 == 0) ? 1 : -1;
        r += ctx.deriv_div(inner, j) * Scalar(Rational(sgn * p));
    }
    return r;
}
}  // namespace detail

// One Borcherds identity instance; returns LHS - RHS.
inline State borcherds_defect(const VoaContext& ctx, const State& a, const State& b,
                              const State& c, long m, long n, long l) {
    Rational wa = ctx.weight_of(a), wb = ctx.weight_of(b), wc = ctx.weight_of(c);
    int p = (ctx.parity_of(a) & ctx.parity_of(b)) ? -1 : 1;
    State lhs, rhs;
    long jmax = to_long(floor_rat(wa + wb - 1)) - l;
    for (long j = 0; j <= jmax; ++j) {
        State ab = ctx.nth(a, b, l + j);
        if (ab.is_zero()) continue;
        lhs += ctx.nth(ab, c, m + n - j) * Scalar(binom(m, j));
    }
    long j1 = to_long(floor_rat(wb + wc - 1)) - n;
    long j2 = to_long(floor_rat(wa + wc - 1)) - m;
    for (long j = 0; j <= std::max(j1, j2); ++j) {
        Scalar cj(binom(l, j) * (j % 2 ? -1 : 1));
        if (cj.is_zero()) break;  // l >= 0: binomial support ends
        if (j <= j1) {
            State bc = ctx.nth(b, c, n + j);
            if (!bc.is_zero()) rhs += ctx.nth(a, bc, m + l - j) * cj;
        }
        if (j <= j2) {
            State ac = ctx.nth(a, c, m + j);
            if (!ac.is_zero())
                rhs += ctx.nth(b, ac, n + l - j) * (cj * Scalar(Rational(-p * (l % 2 ? -1 : 1))));
        }
    }
    return lhs - rhs;
}

inline AxiomReport verify_axioms(const VoaContext& ctx, int samples = 50,
                                 uint64_t seed = 1, int maxlen = 3, int maxder = 2,
                                 const Rational& maxweight = Rational(4)) {
    AxiomReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> small(-2, 2);
    auto fail = [&](const std::string& what, const State& defect) {
        rep.failures.push_back(what + " ; defect = " + ctx.state_str(defect));
    };

    for (int it = 0; it < samples; ++it) {
        Monomial ma = random_monomial(ctx, rng, maxlen, maxder, maxweight);
        Monomial mb = random_monomial(ctx, rng, maxlen, maxder, maxweight);
        Monomial mc = random_monomial(ctx, rng, std::max(1, maxlen - 1), maxder, maxweight);
        State a = State::single(ma), b = State::single(mb), c = State::single(mc);
        Rational wa = ctx.weight_of(ma), wb = ctx.weight_of(mb);
        long nmax = to_long(floor_rat(wa + wb - 1));

        // vacuum axioms
        ++rep.checks;
        if (ctx.nth(State::vacuum(), a, -1) != a) fail("1_(-1)a = a", ctx.nth(State::vacuum(), a, -1) - a);
        for (long j = 0; j <= 2; ++j) {
            ++rep.checks;
            State d = ctx.nth(a, State::vacuum(), -1 - j) - ctx.deriv_div(a, j);
            if (!d.is_zero()) fail("a_(-1-j)1 = T^(j)a, j=" + std::to_string(j), d);
        }
        ++rep.checks;
        if (!ctx.nth(a, State::vacuum(), 0).is_zero())
            fail("a_(0)1 = 0", ctx.nth(a, State::vacuum(), 0));

        // skew symmetry, truncation, gradings, canonicity
        for (long n = -2; n <= nmax + 1; ++n) {
            State ab = ctx.nth(a, b, n);
            ++rep.checks;
            if (n > nmax && !ab.is_zero()) fail("truncation a_(n)b = 0, n > bound", ab);
            State d = ab - detail::skew_rhs(ctx, a, b, n, nmax);
            ++rep.checks;
            if (!d.is_zero())
                fail("skew symmetry at n=" + std::to_string(n) + " for " + ctx.mono_str(ma) +
                         ", " + ctx.mono_str(mb), d);
            for (auto& [m, coeff] : ab.terms()) {
                ++rep.checks;
                if (ctx.weight_of(m) != wa + wb - n - 1) fail("weight additivity", ab);
                if (!m.is_canonical()) fail("canonical ordering in product", ab);
                for (size_t q = 0; q < ctx.gens[0].charges.size(); ++q)
                    if (ctx.charge_of(m, q) != ctx.charge_of(ma, q) + ctx.charge_of(mb, q))
                        fail("charge additivity", ab);
            }
        }

        // derivative rules
        long n = small(rng);
        ++rep.checks;
        State d1 = ctx.nth(ctx.deriv(a), b, n) - ctx.nth(a, b, n - 1) * Scalar(Rational(-n));
        if (!d1.is_zero()) fail("(Ta)_(n)b = -n a_(n-1)b", d1);
        ++rep.checks;
        State d2 = ctx.deriv(ctx.nth(a, b, n)) - ctx.nth(ctx.deriv(a), b, n) -
                   ctx.nth(a, ctx.deriv(b), n);
        if (!d2.is_zero()) fail("T derivation of products", d2);

        // Borcherds identity instance
        long bm = small(rng), bn = small(rng), bl = small(rng);
        ++rep.checks;
        State d3 = borcherds_defect(ctx, a, b, c, bm, bn, bl);
        if (!d3.is_zero())
            fail("Borcherds identity (m,n,l)=(" + std::to_string(bm) + "," +
                     std::to_string(bn) + "," + std::to_string(bl) + ") on " +
                     ctx.mono_str(ma) + ", " + ctx.mono_str(mb) + ", " + ctx.mono_str(mc),
                 d3);
    }
    return rep;
}

}  // namespace voakit
