#pragma once
// Rational lattice toolkit: duals, orthogonal complements, discriminant
// groups (Smith normal form), monodromy characters, the lifting solver, and
// the evenness/extension predicate for Fock-sum extensions.
//
// A Lattice is a basis (rows, in fixed reference coordinates) together with
// the ambient symmetric pairing on those coordinates; gram() is the pairing
// of the basis vectors. An optional second form, weight_form, carries the
// Fock conformal-weight normalization, which varies per example and is never
// inferred from the pairing.

#include "matq.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace voakit {

using Vec = std::vector<Rational>;

inline Rational pairing(const Mat& form, const Vec& u, const Vec& v) {
    Rational r = 0;
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r += u[i] * form[i][j] * v[j];
    return r;
}

struct Lattice {
    Mat ambient;                      // symmetric pairing on reference coordinates
    Mat basis;                        // rows = basis vectors (same coordinates)
    std::optional<Mat> weight_form;   // Fock conformal-weight form, if declared
    std::vector<std::string> basis_labels;
    int pairing_sign = 1;             // sign used in the monodromy exponential

    size_t rank() const { return basis.size(); }
    Mat gram() const { return mat_mul(basis, mat_mul(ambient, mat_transpose(basis))); }
    Rational det() const { return mat_det(gram()); }

    static Lattice from_gram(Mat g) {
        Lattice l;
        l.basis = mat_identity(g.size());
        l.ambient = std::move(g);
        return l;
    }
};

// Dual basis in the same coordinates: rows D with D * ambient * basis^T = I.
inline Lattice dual_lattice(const Lattice& l) {
    Lattice d = l;
    d.basis = mat_inverse(mat_mul(l.basis, l.ambient));
    for (auto& lab : d.basis_labels) lab += "'";
    return d;
}

inline Lattice scale_lattice(const Lattice& l, const Rational& c) {
    Lattice s = l;
    s.basis = mat_scale(l.basis, c);
    return s;
}

// v (reference coordinates) lies in the lattice iff its basis coordinates are
// integers.
inline bool lattice_member(const Lattice& l, const Vec& v) {
    Mat binv = mat_inverse(l.basis);
    Vec coords(l.rank(), 0);
    for (size_t j = 0; j < l.rank(); ++j)
        for (size_t i = 0; i < v.size(); ++i) coords[j] += v[i] * binv[i][j];
    for (auto& c : coords)
        if (!is_integer(c)) return false;
    return true;
}

inline bool lattice_equal(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) return false;
    return mat_is_integral(mat_mul(a.basis, mat_inverse(b.basis))) &&
           mat_is_integral(mat_mul(b.basis, mat_inverse(a.basis)));
}

// Basis of {v in the ambient lattice : <v, s> = 0 for all rows s of sub}.
// sub rows are in reference coordinates; returns rows in the same coordinates.
inline Mat orthogonal_complement(const Lattice& l, const Mat& sub) {
    // integer solutions x of x * (basis * ambient * sub^T) = 0
    Mat pair = mat_mul(l.basis, mat_mul(l.ambient, mat_transpose(sub)));
    // clear denominators column-wise
    size_t n = pair.size(), m = n ? pair[0].size() : 0;
    IMat a(m, std::vector<Integer>(n, 0));  // transposed: rows index sub
    for (size_t j = 0; j < m; ++j) {
        Integer lcm = 1;
        for (size_t i = 0; i < n; ++i) {
            Integer den = pair[i][j].get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
        for (size_t i = 0; i < n; ++i) {
            Rational scaled = pair[i][j] * Rational(lcm);
            a[j][i] = scaled.get_num();
        }
    }
    SmithForm s = smith_normal_form(std::move(a));
    // kernel of A (rows m x cols n): columns of V beyond the nonzero diagonal
    size_t nz = s.invariant_factors.size();
    Mat out;
    for (size_t col = nz; col < n; ++col) {
        Vec x(n);
        for (size_t i = 0; i < n; ++i) x[i] = Rational(s.V[i][col]);
        // x is in basis coordinates; convert to reference coordinates
        Vec v(l.basis[0].size(), 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < v.size(); ++j) v[j] += x[i] * l.basis[i][j];
        out.push_back(std::move(v));
    }
    return out;
}

struct DiscriminantGroup {
    std::vector<Integer> invariant_factors;  // d1 | d2 | ..., each > 1
    Mat generators;                          // rows: elements of L' (reference coords)
    Integer order = 1;
};

inline DiscriminantGroup discriminant_group(const Lattice& l) {
    Mat g = l.gram();
    if (!mat_is_integral(g)) throw std::domain_error("gram matrix is not integral");
    size_t n = g.size();
    IMat a(n, std::vector<Integer>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = g[i][j].get_num();
    SmithForm s = smith_normal_form(std::move(a));
    // L'/L = coker(G : Z^n -> Z^n); generator for factor d_i is G^{-1} U^{-1} e_i
    Mat uinvq(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) uinvq[i][j] = Rational(s.U[i][j]);
    Mat cols = mat_mul(mat_inverse(g), mat_inverse(uinvq));  // columns = candidates
    DiscriminantGroup d;
    for (size_t i = 0; i < s.invariant_factors.size(); ++i) {
        if (s.invariant_factors[i] == 1) continue;
        d.invariant_factors.push_back(s.invariant_factors[i]);
        d.order *= s.invariant_factors[i];
        Vec coords(n);  // generator in basis coordinates of L
        for (size_t r = 0; r < n; ++r) coords[r] = cols[r][i];
        Vec v(l.basis[0].size(), 0);
        for (size_t r = 0; r < n; ++r)
            for (size_t j = 0; j < v.size(); ++j) v[j] += coords[r] * l.basis[r][j];
        d.generators.push_back(std::move(v));
    }
    return d;
}

// Q_mu(nu) = e(sign * <mu, nu>), well defined on L'/L for mu, nu in L'.
inline Phase monodromy_phase(const Lattice& l, const Vec& mu, const Vec& nu) {
    return Phase(pairing(l.ambient, mu, nu) * l.pairing_sign);
}

// The character Q_mu evaluated on the discriminant-group generators.
inline std::vector<Phase> monodromy_character(const Lattice& l, const Vec& mu) {
    DiscriminantGroup d = discriminant_group(l);
    std::vector<Phase> out;
    for (auto& g : d.generators) out.push_back(monodromy_phase(l, mu, g));
    return out;
}

struct LiftSolution {
    bool feasible = false;
    Vec alpha;        // representative, reference coordinates
    Lattice dual;     // solution set is alpha + dual
};

// Solves <alpha, lambda_i> = sign * r_i for the basis rows lambda_i. Always
// feasible for a nondegenerate pairing; the solution set is alpha + L'.
inline LiftSolution solve_lift(const Lattice& l, const Vec& targets) {
    LiftSolution s;
    Mat ba = mat_mul(l.basis, l.ambient);  // (ba * alpha^T)_i = <lambda_i, alpha>
    Mat inv = mat_inverse(ba);
    s.alpha.assign(inv.size(), 0);
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t j = 0; j < targets.size(); ++j)
            s.alpha[i] += inv[i][j] * targets[j] * l.pairing_sign;
    s.dual = dual_lattice(l);
    s.feasible = true;
    return s;
}

inline bool lift_membership(const Vec& beta, const LiftSolution& s) {
    Vec diff(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) diff[i] = beta[i] - s.alpha[i];
    return lattice_member(s.dual, diff);
}

enum class ExtensionKind { voa, super_voa, not_extension };

// Fock-sum extension predicate over the declared weight form: a VOA if every
// pairing of sub-basis vectors is integral and every norm is even; a super
// VOA if pairings are integral but some norm is odd; otherwise no extension.
inline ExtensionKind extension_check(const Lattice& l, const Mat& weight_form,
                                     const Mat& sub) {
    bool all_even = true;
    for (size_t i = 0; i < sub.size(); ++i)
        for (size_t j = i; j < sub.size(); ++j) {
            Rational p = pairing(weight_form, sub[i], sub[j]);
            if (!is_integer(p)) return ExtensionKind::not_extension;
            if (i == j && !is_integer(p / 2)) all_even = false;
        }
    return all_even ? ExtensionKind::voa : ExtensionKind::super_voa;
}

inline ExtensionKind extension_check(const Lattice& l, const Mat& sub) {
    if (!l.weight_form) throw std::domain_error("lattice has no declared weight form");
    return extension_check(l, *l.weight_form, sub);
}

inline Lattice lattice_from_json(const nlohmann::json& j) {
    Lattice l;
    size_t r = j.at("rank").get<size_t>();
    auto read_mat = [&](const nlohmann::json& m) {
        Mat out;
        for (auto& row : m) {
            Vec v;
            for (auto& x : row)
                v.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                          : Rational(x.get<long>()));
            out.push_back(std::move(v));
        }
        return out;
    };
    l.ambient = read_mat(j.at("gram"));
    if (l.ambient.size() != r) throw std::invalid_argument("gram size != rank");
    l.basis = mat_identity(r);
    if (j.contains("basis")) l.basis = read_mat(j.at("basis"));
    if (j.contains("weight_form")) l.weight_form = read_mat(j.at("weight_form"));
    if (j.contains("basis_labels"))
        for (auto& s : j.at("basis_labels")) l.basis_labels.push_back(s.get<std::string>());
    if (j.contains("pairing_sign")) l.pairing_sign = j.at("pairing_sign").get<int>();
    return l;
}

inline Lattice lattice_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lattice file '" + path + "'");
    nlohmann::json j;
    in >> j;
    return lattice_from_json(j);
}

}  // namespace voakit
