#pragma once
// Symbolic bookkeeping for Schur-Weyl decompositions and simple-current
// functors: weight orbits, Loewy diagrams, and label-level transport.
//
// Statements about module categories are encoded here as transforms on label
// data with validation (lengths, shapes, labels) — never as claims proved
// about actual modules.  Infinite weight sets are represented by finitely
// many coset representatives; all operations act on representatives.

#include "lattice.hpp"
#include "matq.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace voakit {

struct MissingLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentLabels : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Loewy diagrams
// ---------------------------------------------------------------------------

struct LoewyDiagram {
    // layers.front() is the head, layers.back() the socle.
    std::vector<std::vector<std::string>> layers;
    // Optional arrows between adjacent layers: {upper layer index, position in
    // upper layer, position in the next layer down}.
    std::vector<std::array<std::size_t, 3>> arrows;

    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.size();
        return n;
    }
};

inline void validate_diagram(const LoewyDiagram& d) {
    if (d.layers.empty()) throw std::invalid_argument("Loewy diagram: no layers");
    for (const auto& l : d.layers)
        if (l.empty()) throw std::invalid_argument("Loewy diagram: empty layer");
    for (const auto& a : d.arrows) {
        if (a[0] + 1 >= d.layers.size() || a[1] >= d.layers[a[0]].size() ||
            a[2] >= d.layers[a[0] + 1].size())
            throw std::invalid_argument("Loewy diagram: arrow out of range");
    }
}

struct SimpleCurrentLabel {
    std::string label;
    Vec element;  // Picard-group element (lattice vector or finite-group tuple)
};

// Replace every composition factor S by J x S according to the relabeling
// map; the shape (layer sizes, total length, arrows) is preserved.
inline LoewyDiagram fuse_diagram(const SimpleCurrentLabel& J, const LoewyDiagram& d,
                                 const std::map<std::string, std::string>& relabel) {
    validate_diagram(d);
    LoewyDiagram out;
    out.arrows = d.arrows;
    for (const auto& layer : d.layers) {
        std::vector<std::string> next;
        for (const auto& s : layer) {
            auto it = relabel.find(s);
            if (it == relabel.end())
                throw MissingLabel("fuse_diagram(" + J.label + "): no image for factor " + s);
            next.push_back(it->second);
        }
        out.layers.push_back(std::move(next));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition data
// ---------------------------------------------------------------------------

struct DecompositionData {
    Lattice lattice;               // the Heisenberg weight lattice L
    std::vector<Vec> orbit_reps;   // finite representatives of the weight set M
    // composition-factor lists of the coset module attached to each
    // representative (a single entry for a simple D_mu)
    std::map<Vec, std::vector<std::string>> labels;
    bool multiplicity_free = false;
    // The radical-generation hypothesis on the regrouped object is an input
    // assertion supplied by the user, never computed here.
    bool radical_condition_asserted = false;

    const std::vector<std::string>& factors_of(const Vec& mu) const {
        auto it = labels.find(mu);
        if (it == labels.end()) throw MissingLabel("no label attached to a representative");
        return it->second;
    }
};

namespace detail {

// Is v an integral combination of the rows of B (all in the same coords)?
inline bool in_integer_row_span(const Mat& rows, const Vec& v) {
    bool vzero = true;
    for (const auto& x : v)
        if (x != 0) vzero = false;
    if (rows.empty()) return vzero;
    // Solve x * rows = v by Gaussian elimination on rows^T | v^T.
    std::size_t r = rows.size(), n = rows[0].size();
    Mat m(n, Vec(r + 1, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) m[j][i] = rows[i][j];
    for (std::size_t j = 0; j < n; ++j) m[j][r] = v[j];
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < r && row < n; ++c) {
        std::size_t p = n;
        for (std::size_t i = row; i < n; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p == n) continue;
        std::swap(m[row], m[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[row][c];
            for (std::size_t cc = c; cc <= r; ++cc) m[i][cc] -= f * m[row][cc];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (m[i][r] != 0) return false;  // inconsistent: v not even in the Q-span
    std::vector<Rational> x(r, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m[i][r] / m[i][pivot_col[i]];
    for (const auto& xi : x)
        if (!is_integer(xi)) return false;
    return true;
}

// Basis (in the same coordinates) of the sublattice generated by the rows.
inline Mat integer_row_span_basis(const Mat& rows) {
    if (rows.empty()) return {};
    // Clear denominators are not needed: generators here are integral by
    // construction; Smith form U A V = D gives basis rows D V^{-1}.
    std::size_t r = rows.size(), n = rows[0].size();
    IMat a(r, std::vector<Integer>(n));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_integer(rows[i][j]))
                throw std::invalid_argument("integer_row_span_basis: non-integral generator");
            a[i][j] = rows[i][j].get_num();
        }
    auto snf = smith_normal_form(a);
    Mat vinv_q(n, Vec(n));
    {
        Mat v(n, Vec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v[i][j] = Rational(snf.V[i][j]);
        vinv_q = mat_inverse(v);
    }
    Mat basis;
    for (std::size_t i = 0; i < std::min(r, n); ++i) {
        if (snf.D[i][i] == 0) continue;
        Vec row(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) row[j] = Rational(snf.D[i][i]) * vinv_q[i][j];
        basis.push_back(std::move(row));
    }
    return basis;
}

}  // namespace detail

struct QuotientDescription {
    std::vector<long> finite_factors;  // invariant factors > 1 of the torsion part
    long free_rank = 0;                // rank of the free part of L / N
};

struct RegroupResult {
    Mat stabilizer_coords;  // basis of N in L-basis coordinates (rows)
    Lattice stabilizer;     // N as a lattice in the reference coordinates
    QuotientDescription quotient;
    // one entry per N-coset of representatives: (class representative, factors)
    std::vector<std::pair<Vec, std::vector<std::string>>> grouped;
};

// Compute the identification sublattice N = stabilizer of the labeling (the
// sublattice of L generated by all differences of equal-labeled
// representatives), validate N-periodicity, and group the representatives by
// N-coset.  N is maximal for the given data: any lattice vector that fixes
// the labeling on the representatives is a difference of equal-labeled
// representatives, hence already in N.
inline RegroupResult sw_regroup(const DecompositionData& data) {
    const Lattice& L = data.lattice;
    Mat binv = mat_inverse(L.basis);
    auto to_lattice_coords = [&](const Vec& v) {
        Vec out(v.size(), Rational(0));
        for (std::size_t j = 0; j < v.size(); ++j)
            for (std::size_t i = 0; i < v.size(); ++i) out[j] += v[i] * binv[i][j];
        return out;
    };

    // generators: differences of equal-labeled representatives, in L-coords
    Mat gens;
    for (std::size_t a = 0; a < data.orbit_reps.size(); ++a)
        for (std::size_t b = a + 1; b < data.orbit_reps.size(); ++b) {
            if (data.factors_of(data.orbit_reps[a]) != data.factors_of(data.orbit_reps[b]))
                continue;
            Vec diff(data.orbit_reps[a].size());
            for (std::size_t i = 0; i < diff.size(); ++i)
                diff[i] = data.orbit_reps[b][i] - data.orbit_reps[a][i];
            Vec coords = to_lattice_coords(diff);
            for (const auto& c : coords)
                if (!is_integer(c))
                    throw InconsistentLabels("representative difference is not a lattice vector");
            gens.push_back(std::move(coords));
        }

    RegroupResult res;
    res.stabilizer_coords = detail::integer_row_span_basis(gens);

    // N-periodicity: equal N-cosets must carry equal labels
    auto same_coset = [&](const Vec& mu, const Vec& nu) {
        Vec diff(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) diff[i] = nu[i] - mu[i];
        return detail::in_integer_row_span(res.stabilizer_coords, to_lattice_coords(diff));
    };
    for (std::size_t a = 0; a < data.orbit_reps.size(); ++a)
        for (std::size_t b = a + 1; b < data.orbit_reps.size(); ++b)
            if (same_coset(data.orbit_reps[a], data.orbit_reps[b]) &&
                data.factors_of(data.orbit_reps[a]) != data.factors_of(data.orbit_reps[b]))
                throw InconsistentLabels("association is not constant on stabilizer cosets");

    // N in reference coordinates
    res.stabilizer.ambient = L.ambient;
    res.stabilizer.weight_form = L.weight_form;
    for (const auto& row : res.stabilizer_coords) {
        Vec ref(L.basis[0].size(), Rational(0));
        for (std::size_t i = 0; i < row.size(); ++i)
            for (std::size_t j = 0; j < ref.size(); ++j) ref[j] += row[i] * L.basis[i][j];
        res.stabilizer.basis.push_back(std::move(ref));
    }

    // quotient L / N via the Smith form of the coordinate matrix
    long rank_n = long(res.stabilizer_coords.size());
    res.quotient.free_rank = long(L.rank()) - rank_n;
    if (rank_n > 0) {
        IMat a(std::size_t(rank_n), std::vector<Integer>(L.rank()));
        for (std::size_t i = 0; i < std::size_t(rank_n); ++i)
            for (std::size_t j = 0; j < L.rank(); ++j)
                a[i][j] = res.stabilizer_coords[i][j].get_num();
        for (const auto& d : smith_normal_form(a).invariant_factors)
            if (d > 1) res.quotient.finite_factors.push_back(to_long(Rational(d)));
    }

    // group representatives by N-coset
    for (const auto& mu : data.orbit_reps) {
        bool found = false;
        for (auto& [rep, factors] : res.grouped) {
            (void)factors;
            if (same_coset(rep, mu)) { found = true; break; }
        }
        if (!found) res.grouped.push_back({mu, data.factors_of(mu)});
    }
    return res;
}

// Partition the representatives into L-orbits (translation equivalence).
inline std::vector<DecompositionData> orbit_split(const DecompositionData& data) {
    Mat binv = mat_inverse(data.lattice.basis);
    auto same_orbit = [&](const Vec& mu, const Vec& nu) {
        Vec coords(mu.size(), Rational(0));
        for (std::size_t j = 0; j < mu.size(); ++j)
            for (std::size_t i = 0; i < mu.size(); ++i) coords[j] += (nu[i] - mu[i]) * binv[i][j];
        for (const auto& c : coords)
            if (!is_integer(c)) return false;
        return true;
    };
    std::vector<DecompositionData> orbits;
    for (const auto& mu : data.orbit_reps) {
        DecompositionData* home = nullptr;
        for (auto& o : orbits)
            if (same_orbit(o.orbit_reps.front(), mu)) { home = &o; break; }
        if (!home) {
            DecompositionData fresh;
            fresh.lattice = data.lattice;
            fresh.multiplicity_free = data.multiplicity_free;
            fresh.radical_condition_asserted = data.radical_condition_asserted;
            orbits.push_back(std::move(fresh));
            home = &orbits.back();
        }
        home->orbit_reps.push_back(mu);
        home->labels[mu] = data.factors_of(mu);
    }
    return orbits;
}

// Validate the label-level shadow of a short exact sequence sub -> mid ->
// quot: per-representative composition-length additivity and factor-multiset
// consistency.  This is bookkeeping validation, not a proof of module-level
// exactness.
inline void exactness_transport(const DecompositionData& sub, const DecompositionData& mid,
                                const DecompositionData& quot) {
    if (sub.orbit_reps != mid.orbit_reps || quot.orbit_reps != mid.orbit_reps)
        throw std::invalid_argument("exactness_transport: the three data must share M");
    for (const auto& mu : mid.orbit_reps) {
        auto s = sub.factors_of(mu);
        auto q = quot.factors_of(mu);
        auto m = mid.factors_of(mu);
        if (s.size() + q.size() != m.size()) {
            std::string at;
            for (const auto& x : mu) at += (at.empty() ? "" : ",") + to_string(x);
            throw LengthMismatch("length additivity fails at mu = (" + at + ")");
        }
        std::vector<std::string> combined = s;
        combined.insert(combined.end(), q.begin(), q.end());
        std::sort(combined.begin(), combined.end());
        std::sort(m.begin(), m.end());
        if (combined != m) {
            std::string at;
            for (const auto& x : mu) at += (at.empty() ? "" : ",") + to_string(x);
            throw LengthMismatch("factor multisets disagree at mu = (" + at + ")");
        }
    }
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline nlohmann::json diagram_to_json(const LoewyDiagram& d) {
    nlohmann::json j;
    j["layers"] = d.layers;
    if (!d.arrows.empty()) {
        j["arrows"] = nlohmann::json::array();
        for (const auto& a : d.arrows) j["arrows"].push_back({a[0], a[1], a[2]});
    }
    return j;
}

inline LoewyDiagram diagram_from_json(const nlohmann::json& j) {
    LoewyDiagram d;
    for (const auto& layer : j.at("layers"))
        d.layers.push_back(layer.get<std::vector<std::string>>());
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            d.arrows.push_back({a.at(0).get<std::size_t>(), a.at(1).get<std::size_t>(),
                                a.at(2).get<std::size_t>()});
    validate_diagram(d);
    return d;
}

inline std::string vec_key(const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

inline Vec vec_from_key(const std::string& key) {
    Vec v;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        auto comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        v.push_back(parse_rational(key.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return v;
}

inline nlohmann::json decomposition_to_json(const DecompositionData& d,
                                            const std::string& lattice_ref) {
    nlohmann::json j;
    j["lattice_ref"] = lattice_ref;
    j["orbit_reps"] = nlohmann::json::array();
    for (const auto& mu : d.orbit_reps) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : mu) row.push_back(to_string(x));
        j["orbit_reps"].push_back(std::move(row));
    }
    j["labels"] = nlohmann::json::object();
    for (const auto& [mu, factors] : d.labels) j["labels"][vec_key(mu)] = factors;
    if (d.multiplicity_free) j["multiplicity_free"] = true;
    if (d.radical_condition_asserted) j["radical_condition_asserted"] = true;
    return j;
}

// Loads decomposition data; lattice_ref is resolved relative to data_dir.
inline DecompositionData decomposition_from_json(const nlohmann::json& j,
                                                 const std::string& data_dir) {
    DecompositionData d;
    d.lattice = lattice_from_file(data_dir + "/" + j.at("lattice_ref").get<std::string>());
    for (const auto& row : j.at("orbit_reps")) {
        Vec mu;
        for (const auto& x : row)
            mu.push_back(x.is_string() ? parse_rational(x.get<std::string>())
                                       : Rational(x.get<long>()));
        d.orbit_reps.push_back(std::move(mu));
    }
    for (const auto& [key, factors] : j.at("labels").items()) {
        if (factors.is_string())
            d.labels[vec_from_key(key)] = {factors.get<std::string>()};
        else
            d.labels[vec_from_key(key)] = factors.get<std::vector<std::string>>();
    }
    d.multiplicity_free = j.value("multiplicity_free", false);
    d.radical_condition_asserted = j.value("radical_condition_asserted", false);
    return d;
}

}  // namespace voakit
