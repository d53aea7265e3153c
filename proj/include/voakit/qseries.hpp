#pragma once
// Two-variable character arithmetic over exact rationals.
//
// A TwoVariableSeries models a (truncated) sum  sum_i c_i z^{mu_i} q^{D_i}
// where the z-charge mu is a rational vector (one entry per Heisenberg
// direction) and the q-exponent D is a rational.  All exponents are exact;
// central-charge shifts like q^{-1/24} live inside the exponents and are
// never floated.  The truncation order records the q-weight up to which the
// series is known to be exact; arithmetic propagates the honest bound.

#include "lattice.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace voakit {

struct NotFockDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// TwoVariableSeries
// ---------------------------------------------------------------------------

struct QKey {
    Vec charge;          // z-exponent vector
    Rational exponent;   // q-exponent

    bool operator<(const QKey& o) const {
        if (exponent != o.exponent) return exponent < o.exponent;
        if (charge.size() != o.charge.size()) return charge.size() < o.charge.size();
        for (std::size_t i = 0; i < charge.size(); ++i)
            if (charge[i] != o.charge[i]) return charge[i] < o.charge[i];
        return false;
    }
    bool operator==(const QKey& o) const {
        return exponent == o.exponent && charge == o.charge;
    }
};

struct TwoVariableSeries {
    int rank = 1;                       // length of every charge vector
    Rational truncation = Rational(20); // exact up to (and including) this q-weight
    std::map<QKey, Rational> terms;

    TwoVariableSeries() = default;
    TwoVariableSeries(int r, Rational N) : rank(r), truncation(std::move(N)) {}

    void add_term(Vec charge, Rational expo, const Rational& coeff) {
        if (coeff == 0 || expo > truncation) return;
        if (int(charge.size()) != rank)
            throw std::invalid_argument("TwoVariableSeries: charge rank mismatch");
        QKey key{std::move(charge), std::move(expo)};
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    std::optional<Rational> min_exponent() const {
        if (terms.empty()) return std::nullopt;
        return terms.begin()->first.exponent;  // map is ordered by exponent first
    }

    Rational coefficient(const Vec& charge, const Rational& expo) const {
        auto it = terms.find(QKey{charge, expo});
        return it == terms.end() ? Rational(0) : it->second;
    }

    TwoVariableSeries truncated(const Rational& N) const {
        TwoVariableSeries out(rank, std::min(N, truncation));
        for (const auto& [key, c] : terms)
            if (key.exponent <= out.truncation) out.terms.emplace(key, c);
        return out;
    }

    // True if every charge vector is identically zero.
    bool charge_free() const {
        for (const auto& [key, c] : terms) {
            (void)c;
            for (const auto& x : key.charge)
                if (x != 0) return false;
        }
        return true;
    }
};

inline Vec zero_charge(int rank) { return Vec(std::size_t(rank), Rational(0)); }

inline TwoVariableSeries operator+(const TwoVariableSeries& a, const TwoVariableSeries& b) {
    if (a.rank != b.rank) throw std::invalid_argument("series rank mismatch in +");
    TwoVariableSeries out(a.rank, std::min(a.truncation, b.truncation));
    for (const auto& [key, c] : a.terms) out.add_term(key.charge, key.exponent, c);
    for (const auto& [key, c] : b.terms) out.add_term(key.charge, key.exponent, c);
    return out;
}

inline TwoVariableSeries operator-(const TwoVariableSeries& a, const TwoVariableSeries& b) {
    if (a.rank != b.rank) throw std::invalid_argument("series rank mismatch in -");
    TwoVariableSeries out(a.rank, std::min(a.truncation, b.truncation));
    for (const auto& [key, c] : a.terms) out.add_term(key.charge, key.exponent, c);
    for (const auto& [key, c] : b.terms) out.add_term(key.charge, key.exponent, -c);
    return out;
}

inline TwoVariableSeries operator*(const TwoVariableSeries& a, const Rational& s) {
    TwoVariableSeries out(a.rank, a.truncation);
    for (const auto& [key, c] : a.terms) out.add_term(key.charge, key.exponent, c * s);
    return out;
}

// Product truncation: if a is exact to Ta with lowest exponent ma (and likewise
// b), then every product term missing from a's tail has exponent > Ta + mb, so
// the product is exact to min(Ta + mb, Tb + ma).
inline TwoVariableSeries operator*(const TwoVariableSeries& a, const TwoVariableSeries& b) {
    if (a.rank != b.rank) throw std::invalid_argument("series rank mismatch in *");
    // An empty factor is zero up to its truncation, so any unseen term of it
    // lies strictly beyond; its truncation is the right stand-in for the
    // minimal exponent.
    Rational ma = a.terms.empty() ? a.truncation : *a.min_exponent();
    Rational mb = b.terms.empty() ? b.truncation : *b.min_exponent();
    Rational trunc = std::min(a.truncation + mb, b.truncation + ma);
    TwoVariableSeries out(a.rank, trunc);
    for (const auto& [ka, ca] : a.terms) {
        if (ka.exponent + *b.min_exponent() > trunc) break;  // ordered by exponent
        for (const auto& [kb, cb] : b.terms) {
            Rational e = ka.exponent + kb.exponent;
            if (e > trunc) break;
            Vec mu(std::size_t(a.rank));
            for (int i = 0; i < a.rank; ++i) mu[std::size_t(i)] = ka.charge[std::size_t(i)] + kb.charge[std::size_t(i)];
            out.add_term(std::move(mu), std::move(e), ca * cb);
        }
    }
    return out;
}

inline bool series_equal_to_order(const TwoVariableSeries& a, const TwoVariableSeries& b,
                                  const Rational& N) {
    return (a.truncated(N) - b.truncated(N)).is_zero();
}

// ---------------------------------------------------------------------------
// Eta function and Fock characters
// ---------------------------------------------------------------------------

// Partition numbers p(0..n) by the textbook two-dimensional recurrence.
inline std::vector<Rational> partition_numbers(long n) {
    if (n < 0) n = 0;
    std::vector<Rational> p(std::size_t(n) + 1, Rational(0));
    p[0] = 1;
    for (long part = 1; part <= n; ++part)
        for (long m = part; m <= n; ++m) p[std::size_t(m)] += p[std::size_t(m - part)];
    return p;
}

// eta(q)^{-1} = q^{-1/24} sum_{n >= 0} p(n) q^n, truncated at q-weight N.
inline TwoVariableSeries eta_inverse(const Rational& N, int rank = 1) {
    TwoVariableSeries out(rank, N);
    long nmax = to_long(floor_rat(N + rat(1, 24)));
    auto p = partition_numbers(nmax);
    for (long n = 0; n <= nmax; ++n)
        out.add_term(zero_charge(rank), Rational(n) - rat(1, 24), p[std::size_t(n)]);
    return out;
}

// eta(q) = q^{1/24} sum_{j in Z} (-1)^j q^{j(3j-1)/2}  (Euler's pentagonal series).
inline TwoVariableSeries eta_series(const Rational& N, int rank = 1) {
    TwoVariableSeries out(rank, N);
    for (long j = 0;; ++j) {
        Rational e1 = Rational(j * (3 * j - 1)) / 2 + rat(1, 24);
        Rational e2 = Rational(j * (3 * j + 1)) / 2 + rat(1, 24);
        if (e1 > N && e2 > N) break;
        Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
        out.add_term(zero_charge(rank), e1, sign);
        if (j > 0) out.add_term(zero_charge(rank), e2, sign);
    }
    return out;
}

// Half-norm of a charge vector under the declared weight form.
inline Rational half_norm(const Mat& weight_form, const Vec& lambda) {
    return pairing(weight_form, lambda, lambda) / 2;
}

// ch F_lambda = z^lambda q^{Q(lambda)} eta(q)^{-rank}.
inline TwoVariableSeries fock_character(const Mat& weight_form, const Vec& lambda,
                                        const Rational& N) {
    int rank = int(lambda.size());
    Rational q0 = half_norm(weight_form, lambda);
    if (q0 > N) return TwoVariableSeries(rank, N);  // entirely beyond the window
    TwoVariableSeries head(rank, N + 1);
    head.add_term(lambda, q0, Rational(1));
    TwoVariableSeries out = head;
    for (int i = 0; i < rank; ++i) out = out * eta_inverse(N - q0 + 1, rank);
    return out.truncated(N);
}

// ---------------------------------------------------------------------------
// Spectral flow (rank 1)
// ---------------------------------------------------------------------------

// ch[sigma^l M](z;q) = z^{lk} q^{l^2 k/4} ch[M](z q^{l/2}; q).
inline TwoVariableSeries spectral_flow(const TwoVariableSeries& ch, const Rational& ell,
                                       const Rational& k, const Rational& N) {
    if (ch.rank != 1) throw std::invalid_argument("spectral_flow: rank-1 series required");
    TwoVariableSeries out(1, N);
    for (const auto& [key, c] : ch.terms) {
        Rational mu = key.charge[0];
        out.add_term({mu + ell * k}, key.exponent + mu * ell / 2 + ell * ell * k / 4, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Branching extraction and decomposition verification
// ---------------------------------------------------------------------------

// ch D_mu(q) = (charge-mu slice of ch M) * eta^{rank} * q^{-Q(mu)}.  The result
// is z-independent by construction (all charges zero).  A clean branching
// function is a graded dimension, so every coefficient must be a nonnegative
// integer; anything else means the slice was not a multiple of ch F_mu.
inline TwoVariableSeries branching_extract(const TwoVariableSeries& ch, const Mat& weight_form,
                                           const Vec& mu, const Rational& N) {
    if (int(mu.size()) != ch.rank)
        throw std::invalid_argument("branching_extract: charge rank mismatch");
    Rational q0 = half_norm(weight_form, mu);
    TwoVariableSeries slice(ch.rank, ch.truncation - q0);
    for (const auto& [key, c] : ch.terms)
        if (key.charge == mu) slice.add_term(zero_charge(ch.rank), key.exponent - q0, c);
    TwoVariableSeries out = slice;
    for (int i = 0; i < ch.rank; ++i) {
        Rational low = std::min(Rational(0), out.min_exponent().value_or(Rational(0)));
        out = out * eta_series(out.truncation - low + 1, ch.rank);
    }
    out = out.truncated(N);
    for (const auto& [key, c] : out.terms) {
        (void)key;
        if (!is_integer(c) || c < 0)
            throw NotFockDivisible("charge slice is not a clean multiple of the Fock character");
    }
    return out;
}

struct DecompositionSummand {
    Vec charge;                 // Fock label lambda
    TwoVariableSeries coset;    // charge-free coset character ch D_lambda(q)
};

struct DecompositionReport {
    bool ok = false;
    TwoVariableSeries residual;
};

// Residual of ch M - sum_lambda ch F_lambda * ch D_lambda, to q-weight N.
inline DecompositionReport verify_decomposition(const TwoVariableSeries& ch,
                                                const Mat& weight_form,
                                                const std::vector<DecompositionSummand>& summands,
                                                const Rational& N) {
    TwoVariableSeries residual = ch.truncated(N);
    for (const auto& s : summands) {
        TwoVariableSeries fock = fock_character(weight_form, s.charge, N + rat(1, 24));
        residual = residual - (fock * s.coset).truncated(N);
    }
    DecompositionReport rep;
    rep.residual = residual.truncated(N);
    rep.ok = rep.residual.is_zero();
    return rep;
}

// ---------------------------------------------------------------------------
// Multiplicity-freeness criteria
// ---------------------------------------------------------------------------

struct CharCriterionResult {
    bool holds = false;
    std::optional<Rational> fail_order;  // first q-weight where the symmetry breaks
};

// Character symmetry test: does ch M(z;q) = z^lambda q^{Q(lambda)} ch M(z q^lambda; q)
// hold to q-weight N?  Here q^lambda acts on a charge mu by q^{<lambda,mu>}.
// Agreement is truncation-relative; the caller must supply ch with enough
// margin that both sides are exact to order N.
inline CharCriterionResult multfree_char_criterion(const TwoVariableSeries& ch,
                                                   const Mat& weight_form, const Vec& lambda,
                                                   const Rational& N) {
    if (int(lambda.size()) != ch.rank)
        throw std::invalid_argument("multfree_char_criterion: charge rank mismatch");
    Rational q0 = half_norm(weight_form, lambda);
    TwoVariableSeries rhs(ch.rank, N);
    for (const auto& [key, c] : ch.terms) {
        Vec mu(std::size_t(ch.rank));
        for (int i = 0; i < ch.rank; ++i) mu[std::size_t(i)] = key.charge[std::size_t(i)] + lambda[std::size_t(i)];
        rhs.add_term(std::move(mu), key.exponent + pairing(weight_form, lambda, key.charge) + q0, c);
    }
    TwoVariableSeries diff = ch.truncated(N) - rhs;
    CharCriterionResult res;
    res.holds = diff.is_zero();
    if (!res.holds) res.fail_order = *diff.min_exponent();
    return res;
}

enum class MultFreeVerdict { guaranteed, inconclusive };

// Conformal-weight criterion: with weights bounded below and Q(lambda) < 0,
// the Fock weights Q(mu + n lambda) are unbounded below along the orbit, so a
// repeat D_{mu} = D_{mu + lambda} is impossible.
inline MultFreeVerdict multfree_weight_criterion(const Mat& weight_form, const Vec& mu,
                                                 const Vec& lambda, bool bounded_below) {
    bool lambda_zero = true;
    for (const auto& x : lambda)
        if (x != 0) lambda_zero = false;
    if (lambda_zero)
        throw std::invalid_argument("multfree_weight_criterion: lambda must be nonzero");
    if (mu.size() != lambda.size())
        throw std::invalid_argument("multfree_weight_criterion: rank mismatch");
    if (bounded_below && half_norm(weight_form, lambda) < 0) return MultFreeVerdict::guaranteed;
    return MultFreeVerdict::inconclusive;
}

// ---------------------------------------------------------------------------
// Standard characters (external oracles)
// ---------------------------------------------------------------------------

struct CharacterDatum {
    std::string label;
    TwoVariableSeries series;
    Mat weight_form;  // form used for the Fock factors of the ambient decomposition
};

// Virasoro minimal model M(p,p') character of h_{r,s} via the Rocha-Caridi
// alternating sum: q^{-c/24} [sum_n q^{A(n)} - q^{B(n)}] / prod (1 - q^m),
// with A(n) = ((2pp'n + rp' - sp)^2 - (p-p')^2)/(4pp') and B(n) the same with
// s -> -s.  For the Ising model, (p,p') = (3,4).
inline TwoVariableSeries minimal_model_character(long p, long pp, long r, long s,
                                                 const Rational& N) {
    if (p < 2 || pp < 2 || r < 1 || r >= p || s < 1 || s >= pp)
        throw BadParams("minimal_model_character: (r,s) outside the Kac table");
    Rational c = Rational(1) - Rational(6 * (p - pp) * (p - pp)) / Rational(p * pp);
    Rational shift = -c / 24;
    TwoVariableSeries numer(1, N - shift + rat(1, 24));
    for (long t = 0;; ++t) {
        bool any = false;
        const std::vector<long> tier = (t == 0) ? std::vector<long>{0} : std::vector<long>{t, -t};
        for (long n : tier) {
            long a = 2 * p * pp * n + r * pp - s * p;
            long b = 2 * p * pp * n + r * pp + s * p;
            Rational ea = Rational(a * a - (p - pp) * (p - pp)) / Rational(4 * p * pp);
            Rational eb = Rational(b * b - (p - pp) * (p - pp)) / Rational(4 * p * pp);
            if (ea <= numer.truncation) {
                numer.add_term({Rational(0)}, ea, Rational(1));
                any = true;
            }
            if (eb <= numer.truncation) {
                numer.add_term({Rational(0)}, eb, Rational(-1));
                any = true;
            }
        }
        if (t > 0 && !any) break;
    }
    TwoVariableSeries out = numer * eta_inverse(N - shift, 1);
    TwoVariableSeries head(1, N + 1);
    head.add_term({Rational(0)}, shift + rat(1, 24), Rational(1));  // q^{-c/24} * q^{1/24} from eta
    return (out * head).truncated(N);
}

inline TwoVariableSeries ising_character(const Rational& h, const Rational& N) {
    long r, s;
    if (h == 0) { r = 1; s = 1; }
    else if (h == rat(1, 2)) { r = 2; s = 1; }
    else if (h == rat(1, 16)) { r = 1; s = 2; }
    else throw BadParams("ising_character: h must be 0, 1/2 or 1/16");
    return minimal_model_character(3, 4, r, s, N);
}

namespace detail {

// Laurent polynomial in z with rational coefficients, keyed by z-exponent.
using ZPoly = std::map<long, Rational>;

// Exact division f / (z - z^{-1}); throws if the division is not exact.
inline ZPoly divide_by_z_minus_zinv(const ZPoly& f) {
    if (f.empty()) return {};
    // Shift so that P(z) = f(z) z^{1-M} = [f/(z - 1/z)] z^{-M} (z^2 - 1) is an
    // ordinary polynomial, then long-divide P by z^2 - 1 from the top.
    long M = std::min(0L, f.begin()->first);
    ZPoly P;
    for (const auto& [e, c] : f) P[e + 1 - M] = c;
    ZPoly g;
    while (!P.empty()) {
        auto top = std::prev(P.end());
        long e = top->first;
        Rational c = top->second;
        if (e < 2) throw std::logic_error("Laurent division by (z - 1/z) is not exact");
        g[e - 2 + M] += c;
        P.erase(top);
        P[e - 2] += c;
        if (P[e - 2] == 0) P.erase(e - 2);
    }
    return g;
}

// Theta_{n,m}(z;q) = sum_{j in Z + n/(2m)} q^{m j^2} z^{2 m j}, truncated in q.
inline std::map<Rational, ZPoly> theta(long n, long m, const Rational& N) {
    std::map<Rational, ZPoly> out;
    for (long t = 0;; ++t) {
        bool any = false;
        for (long sign : {+1, -1}) {
            if (t == 0 && sign < 0) continue;
            Rational j = Rational(sign * t) + Rational(n) / Rational(2 * m);
            Rational e = Rational(m) * j * j;
            if (e > N) continue;
            any = true;
            long ze = to_long(Rational(2 * m) * j);
            out[e][ze] += 1;
        }
        if (!any && Rational(m) * Rational(t) * Rational(t) - Rational(std::abs(n)) * Rational(t) > N)
            break;
    }
    return out;
}

}  // namespace detail

// Integrable affine sl2 character by the Weyl-Kac formula,
//   ch L(k,omega) = (Theta_{omega+1,k+2} - Theta_{-omega-1,k+2})
//                 / (Theta_{1,2} - Theta_{-1,2}),
// computed by exact Laurent division.  z tracks the sl2 weight (the adjoint
// currents sit at z^{+-2}) and the quotient carries the full q^{h - c/24}
// normalization automatically.
inline TwoVariableSeries affine_sl2_character(long k, long omega, const Rational& N) {
    if (k < 1 || omega < 0 || omega > k)
        throw BadParams("affine_sl2_character: need integer level k >= 1 and 0 <= omega <= k");
    const Rational qN = N + rat(1, 8);  // numerator is needed to N + (denominator leading exponent)
    auto add_theta = [&](std::map<Rational, detail::ZPoly>& acc, long n, long m, int sgn) {
        for (const auto& [e, poly] : detail::theta(n, m, qN))
            for (const auto& [ze, c] : poly) {
                acc[e][ze] += Rational(sgn) * c;
                if (acc[e][ze] == 0) acc[e].erase(ze);
            }
    };
    std::map<Rational, detail::ZPoly> num, den;
    add_theta(num, omega + 1, k + 2, +1);
    add_theta(num, -(omega + 1), k + 2, -1);
    add_theta(den, 1, 2, +1);
    add_theta(den, -1, 2, -1);
    for (auto it = num.begin(); it != num.end();)
        it = it->second.empty() ? num.erase(it) : std::next(it);
    for (auto it = den.begin(); it != den.end();)
        it = it->second.empty() ? den.erase(it) : std::next(it);

    // den = q^{1/8} (z - z^{-1}) + higher order; divide num by den level by level.
    const Rational d0 = rat(1, 8);
    TwoVariableSeries out(1, N);
    std::map<Rational, detail::ZPoly>& rem = num;
    while (!rem.empty() && rem.begin()->first - d0 <= N) {
        Rational e = rem.begin()->first;
        detail::ZPoly g = detail::divide_by_z_minus_zinv(rem.begin()->second);
        Rational qe = e - d0;
        for (const auto& [ze, c] : g) out.add_term({Rational(ze)}, qe, c);
        // rem -= q^{qe} g(z) * den
        for (const auto& [de, dpoly] : den) {
            Rational ne = qe + de;
            if (ne > qN) break;
            auto& slot = rem[ne];
            for (const auto& [gz, gc] : g)
                for (const auto& [dz, dc] : dpoly) {
                    slot[gz + dz] -= gc * dc;
                    if (slot[gz + dz] == 0) slot.erase(gz + dz);
                }
            if (slot.empty()) rem.erase(ne);
        }
    }
    return out;
}

// sum_{n >= 0} p(n) q^n  (plain partition generating function).
inline TwoVariableSeries partition_character(const Rational& N) {
    TwoVariableSeries out(1, N);
    long nmax = to_long(floor_rat(N));
    auto p = partition_numbers(nmax);
    for (long n = 0; n <= nmax; ++n) out.add_term({Rational(0)}, Rational(n), p[std::size_t(n)]);
    return out;
}

// Conformal weight of the singlet module C_lambda in the level -4/3 coset:
// Delta_lambda = |lambda| (3 |lambda| + 8) / 16.
inline Rational singlet_highest_weight(const Rational& lambda) {
    Rational a = lambda < 0 ? -lambda : lambda;
    return a * (3 * a + 8) / 16;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline nlohmann::json character_to_json(const CharacterDatum& d) {
    nlohmann::json j;
    j["label"] = d.label;
    j["rank"] = d.series.rank;
    j["truncation"] = to_string(d.series.truncation);
    j["terms"] = nlohmann::json::array();
    for (const auto& [key, c] : d.series.terms) {
        nlohmann::json t;
        t["charge"] = nlohmann::json::array();
        for (const auto& x : key.charge) t["charge"].push_back(to_string(x));
        t["exponent"] = to_string(key.exponent);
        t["coeff"] = to_string(c);
        j["terms"].push_back(std::move(t));
    }
    if (!d.weight_form.empty()) {
        j["weight_form"] = nlohmann::json::array();
        for (const auto& row : d.weight_form) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& x : row) r.push_back(to_string(x));
            j["weight_form"].push_back(std::move(r));
        }
    }
    return j;
}

inline Rational json_rational(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    return parse_rational(v.get<std::string>());
}

inline CharacterDatum character_from_json(const nlohmann::json& j) {
    CharacterDatum d;
    d.label = j.at("label").get<std::string>();
    int rank = j.at("rank").get<int>();
    d.series = TwoVariableSeries(rank, json_rational(j.at("truncation")));
    for (const auto& t : j.at("terms")) {
        Vec charge;
        for (const auto& x : t.at("charge")) charge.push_back(json_rational(x));
        d.series.add_term(std::move(charge), json_rational(t.at("exponent")),
                          json_rational(t.at("coeff")));
    }
    if (j.contains("weight_form"))
        for (const auto& row : j.at("weight_form")) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(json_rational(x));
            d.weight_form.push_back(std::move(r));
        }
    return d;
}

inline CharacterDatum character_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open character file: " + path);
    nlohmann::json j;
    in >> j;
    return character_from_json(j);
}

}  // namespace voakit
