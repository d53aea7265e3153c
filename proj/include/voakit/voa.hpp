#pragma once
// The n-th product engine. A VoaContext holds the generators of a vertex
// (super)algebra together with the singular OPE table g_(n)h (n >= 0) of the
// generators; every other product is derived from it:
//
//   * derivative shifts      (Ta)_(n) = -n a_(n-1),  a_(n)Tb = T(a_(n)b) + n a_(n-1)b
//   * noncommutative Wick    a_(n):bc: = :(a_(n)b)c: + p(a,b):b(a_(n)c):
//                               + sum_{m=0}^{n-1} C(n,m) (a_(m)b)_(n-m-1) c
//   * iterate                (:ab:)_(n)c = sum_{j>=0} a_(-1-j)(b_(n+j)c)
//                               + p(a,b) sum_{j>=0} b_(n-1-j)(a_(j)c)
//   * quasi-commutativity    a_(-1)(b_(-1)c) = p(a,b) b_(-1)(a_(-1)c)
//                               + sum_{j>=0} (-1)^j (a_(j)b)_(-2-j) c
//   * skew symmetry          a_(n)b = p(a,b) sum_{j>=0} (-1)^{n+j+1} T^(j)(b_(n+j)a)
//
// together with Koszul signs. Results are always canonical: monomials are
// right-nested with factors ordered (generator ascending, derivative
// descending), a repeated identical odd factor vanishes.

#include "state.hpp"

#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace voakit {

struct GeneratorSpec {
    std::string name;
    int parity = 0;  // 0 even, 1 odd
    Rational weight;
    std::vector<Rational> charges;  // eigenvalues under the declared charge operators
};

class VoaContext {
public:
    std::vector<GeneratorSpec> gens;

    explicit VoaContext(std::vector<GeneratorSpec> g = {}) : gens(std::move(g)) {}

    int add_generator(GeneratorSpec g) {
        gens.push_back(std::move(g));
        return int(gens.size()) - 1;
    }
    int index_of(const std::string& name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return int(i);
        throw std::invalid_argument("unknown generator '" + name + "'");
    }

    // Registers g_(n)h = v. One direction of a pair suffices: the other is
    // completed by skew symmetry on demand. Registering both is also fine as
    // long as they are consistent (verify_axioms checks this).
    void set_ope(int g, int h, long n, State v) { ope_[{g, h}][n] = std::move(v); }
    void set_ope(const std::string& g, const std::string& h, long n, State v) {
        set_ope(index_of(g), index_of(h), n, std::move(v));
    }

    // --- gradings -----------------------------------------------------------

    Rational weight_of(const Monomial& m) const {
        Rational w = 0;
        for (auto& f : m.f) w += gens[size_t(f.gen)].weight + f.der;
        return w;
    }
    // Common weight of a homogeneous state; throws if mixed.
    Rational weight_of(const State& s) const {
        std::optional<Rational> w;
        for (auto& [m, c] : s.terms()) {
            Rational wm = weight_of(m);
            if (!w) w = wm;
            else if (*w != wm) throw std::domain_error("state is not weight-homogeneous");
        }
        if (!w) throw std::domain_error("weight of zero state");
        return *w;
    }

    Rational charge_of(const Monomial& m, size_t which = 0) const {
        Rational q = 0;
        for (auto& f : m.f) {
            const auto& ch = gens[size_t(f.gen)].charges;
            q += which < ch.size() ? ch[which] : Rational(0);
        }
        return q;
    }
    Rational charge_of(const State& s, size_t which = 0) const {
        std::optional<Rational> q;
        for (auto& [m, c] : s.terms()) {
            Rational qm = charge_of(m, which);
            if (!q) q = qm;
            else if (*q != qm) throw std::domain_error("state is not charge-homogeneous");
        }
        if (!q) throw std::domain_error("charge of zero state");
        return *q;
    }

    int parity_of(const Monomial& m) const {
        int p = 0;
        for (auto& f : m.f) p ^= gens[size_t(f.gen)].parity;
        return p;
    }
    int parity_of(const State& s) const {
        if (s.is_zero()) return 0;
        int p = parity_of(s.terms().begin()->first);
        for (auto& [m, c] : s.terms())
            if (parity_of(m) != p) throw std::domain_error("state is not parity-homogeneous");
        return p;
    }

    State gen_state(int g, int der = 0) const { return State::single(Monomial({{g, der}})); }
    State gen_state(const std::string& name, int der = 0) const {
        return gen_state(index_of(name), der);
    }

    // --- core products --------------------------------------------------------

    State nth(const State& a, const State& b, long n) const {
        State r;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) r += nth_mono(ma, mb, n) * (ca * cb);
        return r;
    }

    // Normally ordered product :ab: = a_(-1)b.
    State nop(const State& a, const State& b) const { return nth(a, b, -1); }

    State deriv(const State& a) const {
        State r;
        for (auto& [m, c] : a.terms()) r += deriv_mono(m) * c;
        return r;
    }
    State deriv(const State& a, int times) const {
        State r = a;
        for (int i = 0; i < times; ++i) r = deriv(r);
        return r;
    }

    // T^(j) = T^j / j!
    State deriv_div(const State& a, long j) const {
        return deriv(a, int(j)) * Scalar(Rational(1) / factorial(j));
    }

    // --- printing ---------------------------------------------------------------

    std::string factor_str(const Factor& f) const {
        const std::string& nm = gens[size_t(f.gen)].name;
        if (f.der == 0) return nm;
        return "D^" + std::to_string(f.der) + "(" + nm + ")";
    }
    std::string mono_str(const Monomial& m) const {
        if (m.is_vacuum()) return "1";
        if (m.length() == 1) return factor_str(m.f[0]);
        std::string s = ":";
        for (size_t i = 0; i < m.f.size(); ++i) {
            if (i) s += " ";
            s += factor_str(m.f[i]);
        }
        return s + ":";
    }
    std::string state_str(const State& s) const {
        if (s.is_zero()) return "0";
        std::string out;
        for (auto& [m, c] : s.terms()) {
            std::string cs = c.str();
            bool neg = cs.size() && cs[0] == '-' && cs.find(' ') == std::string::npos &&
                       cs.find('+') == std::string::npos &&
                       cs.find('-', 1) == std::string::npos;
            if (out.empty()) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
            bool needs_parens = c.str().find(' ') != std::string::npos || !c.is_polynomial();
            if (m.is_vacuum()) out += needs_parens ? "(" + c.str() + ")" : (neg ? cs : c.str());
            else if (cs == "1") out += mono_str(m);
            else out += (needs_parens ? "(" + c.str() + ")" : cs) + "*" + mono_str(m);
        }
        return out;
    }

private:
    mutable std::map<std::pair<int, int>, std::map<long, State>> ope_;
    mutable std::map<std::pair<int, int>, bool> skew_done_;
    mutable std::map<std::tuple<Monomial, Monomial, long>, State> nth_cache_;
    mutable std::map<std::pair<Factor, Monomial>, State> np_cache_;
    mutable std::map<Monomial, State> deriv_cache_;

    int ksign(int pa, int pb) const { return (pa & pb & 1) ? -1 : 1; }

    // Largest n with a_(n)b possibly nonzero: weight of result must be >= 0.
    long max_n(const Rational& wa, const Rational& wb) const {
        Rational bound = wa + wb - 1;  // n <= wa + wb - 1
        return to_long(floor_rat(bound));
    }

    // g_(n)h for plain generators, from the table (completing by skew).
    const State& table(int g, int h, long n) const {
        static const State zero;
        auto it = ope_.find({g, h});
        if (it == ope_.end()) {
            if (ope_.count({h, g}) && !skew_done_[{g, h}]) {
                skew_done_[{g, h}] = true;
                complete_by_skew(g, h);
                return table(g, h, n);
            }
            return zero;
        }
        auto jt = it->second.find(n);
        return jt == it->second.end() ? zero : jt->second;
    }

    void complete_by_skew(int g, int h) const {
        // g_(n)h = p(g,h) sum_j (-1)^{n+j+1} T^(j)( h_(n+j) g )
        const auto& src = ope_.at({h, g});
        int p = ksign(gens[size_t(g)].parity, gens[size_t(h)].parity);
        long nmax = max_n(gens[size_t(g)].weight, gens[size_t(h)].weight);
        auto& dst = ope_[{g, h}];
        for (long n = 0; n <= nmax; ++n) {
            State v;
            for (long j = 0; n + j <= nmax; ++j) {
                auto jt = src.find(n + j);
                if (jt == src.end() || jt->second.is_zero()) continue;
                State term = deriv_div(jt->second, j);
                int sgn = ((n + j + 1) % 2 == 0) ? 1 : -1;
                v += term * Scalar(Rational(sgn * p));
            }
            if (!v.is_zero()) dst[n] = std::move(v);
        }
        if (dst.empty()) dst[0] = State();  // mark pair as known-regular
    }

    // Single factor f = d^m(g) acting with nonnegative mode on a single factor.
    State fprod(const Factor& a, const Factor& b, long n) const {
        if (a.der > 0) {
            if (n == 0) return State();
            return fprod({a.gen, a.der - 1}, b, n - 1) * Scalar(Rational(-n));
        }
        if (b.der > 0) {
            // g_(n)(Tb') = T(g_(n)b') + n g_(n-1)b'
            Factor b1{b.gen, b.der - 1};
            State r = deriv(fprod(a, b1, n));
            if (n > 0) r += fprod(a, b1, n - 1) * Scalar(Rational(n));
            return r;
        }
        return table(a.gen, b.gen, n);
    }

    State deriv_mono(const Monomial& m) const {
        if (m.is_vacuum()) return State();
        auto hit = deriv_cache_.find(m);
        if (hit != deriv_cache_.end()) return hit->second;
        Factor f = m.f[0];
        State r = np({f.gen, f.der + 1}, State::single(m.rest()));
        r += np(f, deriv_mono(m.rest()));
        deriv_cache_.emplace(m, r);
        return r;
    }

    State np(const Factor& f, const State& x) const {
        State r;
        for (auto& [m, c] : x.terms()) r += np_mono(f, m) * c;
        return r;
    }

    // f_(-1) m, canonicalized.
    State np_mono(const Factor& f, const Monomial& m) const {
        if (m.is_vacuum()) return State::single(Monomial({f}));
        auto key = std::make_pair(f, m);
        auto hit = np_cache_.find(key);
        if (hit != np_cache_.end()) return hit->second;

        State r;
        const Factor& h = m.f[0];
        int pf = gens[size_t(f.gen)].parity;
        if (factor_precedes(f, h)) {
            r = State::single(m.prepend(f));
        } else if (f == h) {
            if (!pf) {
                r = State::single(m.prepend(f));
            } else {
                // odd square: f_(-1)(f_(-1)R) = 1/2 sum_j (-1)^j (f_(j)f)_(-2-j) R
                State rest = State::single(m.rest());
                long jmax = max_n(gens[size_t(f.gen)].weight + f.der,
                                  gens[size_t(f.gen)].weight + f.der);
                for (long j = 0; j <= jmax; ++j) {
                    State fj = fprod(f, f, j);
                    if (fj.is_zero()) continue;
                    int sgn = (j % 2 == 0) ? 1 : -1;
                    r += nth(fj, rest, -2 - j) * Scalar(rat(sgn, 2));
                }
            }
        } else {
            // h strictly precedes f: commute them.
            State rest = State::single(m.rest());
            int ph = gens[size_t(h.gen)].parity;
            State inner = np(f, rest);
            r = np(h, inner) * Scalar(Rational(ksign(pf, ph)));
            long jmax = max_n(gens[size_t(f.gen)].weight + f.der,
                              gens[size_t(h.gen)].weight + h.der);
            for (long j = 0; j <= jmax; ++j) {
                State fj = fprod(f, h, j);
                if (fj.is_zero()) continue;
                int sgn = (j % 2 == 0) ? 1 : -1;
                r += nth(fj, rest, -2 - j) * Scalar(Rational(sgn));
            }
        }
        np_cache_.emplace(std::move(key), r);
        return r;
    }

    State nth_mono(const Monomial& a, const Monomial& b, long n) const {
        if (a.is_vacuum()) return n == -1 ? State::single(b) : State();
        auto key = std::make_tuple(a, b, n);
        auto hit = nth_cache_.find(key);
        if (hit != nth_cache_.end()) return hit->second;

        State r;
        if (a.length() == 1) {
            r = single_mode(a.f[0], b, n);
        } else {
            // iterate formula for a = :f R:
            Factor f = a.f[0];
            Monomial rest = a.rest();
            State restS = State::single(rest);
            State bS = State::single(b);
            Rational wR = weight_of(rest), wb = weight_of(b);
            Rational wf = gens[size_t(f.gen)].weight + f.der;
            int p = ksign(gens[size_t(f.gen)].parity, parity_of(rest));

            long jmax1 = to_long(floor_rat(wR + wb - 1 - n));
            for (long j = 0; j <= jmax1; ++j) {
                State inner = nth(restS, bS, n + j);
                if (inner.is_zero()) continue;
                // f_(-1-j) = (T^(j)f)_(-1), and T^j d^m g = d^(m+j) g
                r += np({f.gen, f.der + int(j)}, inner) * Scalar(Rational(1) / factorial(j));
            }
            long jmax2 = to_long(floor_rat(wf + wb - 1));
            for (long j = 0; j <= jmax2; ++j) {
                State fj = single_mode(f, b, j);
                if (fj.is_zero()) continue;
                r += nth(restS, fj, n - 1 - j) * Scalar(Rational(p));
            }
        }
        nth_cache_.emplace(std::move(key), r);
        return r;
    }

    // Single factor f with mode n on a monomial b.
    State single_mode(const Factor& f, const Monomial& b, long n) const {
        if (n <= -1) {
            long j = -1 - n;
            return np({f.gen, f.der + int(j)}, State::single(b)) *
                   Scalar(Rational(1) / factorial(j));
        }
        if (f.der > 0) {
            if (n == 0) return State();
            return single_mode({f.gen, f.der - 1}, b, n - 1) * Scalar(Rational(-n));
        }
        if (b.is_vacuum()) return State();
        if (b.length() == 1) return fprod(f, b.f[0], n);
        // Wick: g_(n):h R: with n >= 0
        Factor h = b.f[0];
        Monomial rest = b.rest();
        State restS = State::single(rest);
        State r;
        State gh = fprod(f, h, n);
        if (!gh.is_zero()) r += nth(gh, restS, -1);
        State gR = single_mode(f, rest, n);
        if (!gR.is_zero())
            r += np(h, gR) * Scalar(Rational(ksign(gens[size_t(f.gen)].parity,
                                                   gens[size_t(h.gen)].parity)));
        for (long m = 0; m <= n - 1; ++m) {
            State gm = fprod(f, h, m);
            if (gm.is_zero()) continue;
            r += nth(gm, restS, n - m - 1) * Scalar(binom(n, m));
        }
        return r;
    }
};

}  // namespace voakit
