#pragma once
// Finite ribbon-data checker.
//
// All categorical quantities (fusion rules, twists, S-matrix entries, quantum
// dimensions, optional modified dimensions) are supplied as exact input data;
// nothing is derived from a Verlinde-type computation.  The checker validates
// the supplied fusion ring, finds simple-current orders and evaluates the
// fixed-point criterion scalar dim(J)^s * theta_{J^s x P} / (theta_{J^s}
// theta_P).  S-matrix entries and dimensions that are not rational (e.g.
// sqrt(2) for the Ising spin object) are carried verbatim as expression
// strings; they are only ever tested for literal rational values.

#include "rational.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace voakit {

struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotFixedPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RibbonData {
    std::vector<std::string> labels;
    std::string unit;
    // N_{ij}^k keyed by ((i,j),k); absent means multiplicity 0.
    std::map<std::pair<std::string, std::string>, std::map<std::string, long>> fusion;
    std::map<std::string, Phase> twists;
    std::map<std::pair<std::string, std::string>, std::string> S;  // supplied entries, verbatim
    std::map<std::string, std::string> dims;                       // exact expressions
    std::map<std::string, std::string> modified_dims;              // optional d(.) slots

    bool has_label(const std::string& l) const {
        for (const auto& x : labels)
            if (x == l) return true;
        return false;
    }

    long mult(const std::string& i, const std::string& j, const std::string& k) const {
        auto it = fusion.find({i, j});
        if (it == fusion.end()) return 0;
        auto kt = it->second.find(k);
        return kt == it->second.end() ? 0 : kt->second;
    }

    std::map<std::string, long> fuse(const std::string& i, const std::string& j) const {
        auto it = fusion.find({i, j});
        return it == fusion.end() ? std::map<std::string, long>{} : it->second;
    }

    // Fuse an object with a guaranteed-simple product (invertible partner):
    // product must be a single label with multiplicity 1.
    std::optional<std::string> fuse_simple(const std::string& i, const std::string& j) const {
        auto prod = fuse(i, j);
        if (prod.size() != 1 || prod.begin()->second != 1) return std::nullopt;
        return prod.begin()->first;
    }

    std::optional<std::string> s_entry(const std::string& i, const std::string& j) const {
        auto it = S.find({i, j});
        if (it != S.end()) return it->second;
        it = S.find({j, i});
        if (it != S.end()) return it->second;
        return std::nullopt;
    }

    Phase twist(const std::string& l) const {
        auto it = twists.find(l);
        if (it == twists.end()) throw std::runtime_error("missing twist for label " + l);
        return it->second;
    }

    // Quantum dimension, required to be a literal rational when evaluated.
    Rational dim_rational(const std::string& l) const {
        auto it = dims.find(l);
        if (it == dims.end()) throw std::runtime_error("missing dimension for label " + l);
        return parse_rational(it->second);
    }
};

// True iff the supplied exact expression is the literal rational zero.
inline bool expression_is_zero(const std::string& value) {
    try {
        return parse_rational(value) == 0;
    } catch (const std::exception&) {
        return false;  // non-rational expressions (sqrt(2)/2, ...) are nonzero data
    }
}

// Structural validation of supplied ribbon data.
inline void validate_ribbon(const RibbonData& r) {
    if (!r.has_label(r.unit)) throw std::invalid_argument("ribbon data: unit label missing");
    std::set<std::string> known(r.labels.begin(), r.labels.end());
    if (known.size() != r.labels.size())
        throw std::invalid_argument("ribbon data: duplicate labels");
    for (const auto& [ij, prods] : r.fusion) {
        if (!known.count(ij.first) || !known.count(ij.second))
            throw std::invalid_argument("ribbon data: fusion uses unknown label");
        for (const auto& [k, m] : prods) {
            if (!known.count(k)) throw std::invalid_argument("ribbon data: fusion target unknown");
            if (m < 0) throw std::invalid_argument("ribbon data: negative multiplicity");
        }
    }
    for (const auto& j : r.labels) {
        // unit acts as identity on both sides
        if (r.fuse(r.unit, j) != std::map<std::string, long>{{j, 1}} ||
            r.fuse(j, r.unit) != std::map<std::string, long>{{j, 1}})
            throw std::invalid_argument("ribbon data: unit is not a fusion identity");
    }
    for (const auto& i : r.labels)
        for (const auto& j : r.labels)
            for (const auto& k : r.labels)
                if (r.mult(i, j, k) != r.mult(j, i, k))
                    throw std::invalid_argument("ribbon data: fusion not commutative");
    for (const auto& i : r.labels)
        for (const auto& j : r.labels)
            for (const auto& l : r.labels)
                for (const auto& k : r.labels) {
                    long lhs = 0, rhs = 0;
                    for (const auto& m : r.labels) {
                        lhs += r.mult(i, j, m) * r.mult(m, l, k);
                        rhs += r.mult(j, l, m) * r.mult(i, m, k);
                    }
                    if (lhs != rhs)
                        throw std::invalid_argument("ribbon data: fusion not associative");
                }
    if (!r.twist(r.unit).is_one())
        throw std::invalid_argument("ribbon data: twist of the unit must be 1");
}

// Least s >= 1 with J^s = unit; nullopt encodes "infinite" (never reached
// within the label set, which for genuinely invertible data cannot happen).
inline std::optional<long> simple_current_order(const RibbonData& r, const std::string& J) {
    bool invertible = false;
    for (const auto& jinv : r.labels)
        if (r.fuse_simple(J, jinv) == r.unit) invertible = true;
    if (!invertible) throw NotInvertible("no inverse found for " + J + " in the fusion data");
    std::string power = J;
    for (long s = 1; s <= long(r.labels.size()) + 1; ++s) {
        if (power == r.unit) return s;
        auto next = r.fuse_simple(power, J);
        if (!next) throw NotInvertible("power of " + J + " is not simple");
        power = *next;
    }
    return std::nullopt;
}

enum class HopfVerdict { case1_Szero, case2_theta_balanced, violation };

struct HopfResult {
    HopfVerdict verdict;
    Rational scalar_magnitude;        // |dim(J)^s|
    Phase scalar_phase;               // phase of dim(J)^s * theta ratio
    std::string fixed_power;          // label of J^s
    std::optional<std::string> s_entry_checked;  // supplied S entry used for case 1
};

// Evaluate the fixed-point criterion for the simple current J, fixed point X
// of J^s and probe object P: either the criterion scalar equals 1 (case 2) or
// the supplied S-matrix entry S_{X,P} vanishes (case 1).  Anything else flags
// inconsistent input data.
inline HopfResult hopf_criterion(const RibbonData& r, const std::string& J, const std::string& X,
                                 long s, const std::string& P) {
    if (s < 1) throw std::invalid_argument("hopf_criterion: s must be positive");
    std::string Js = r.unit;
    for (long i = 0; i < s; ++i) {
        auto next = r.fuse_simple(Js, J);
        if (!next) throw NotInvertible("power of " + J + " is not simple");
        Js = *next;
    }
    auto fixed = r.fuse_simple(Js, X);
    if (!fixed || *fixed != X)
        throw NotFixedPoint("J^s tensor X is not isomorphic to X");
    auto JsP = r.fuse_simple(Js, P);
    if (!JsP) throw std::invalid_argument("hopf_criterion: J^s tensor P is not simple");

    Rational dimJ = r.dim_rational(J);
    Rational mag = 1;
    Phase phase = r.twist(*JsP) - r.twist(Js) - r.twist(P);
    for (long i = 0; i < s; ++i) mag *= dimJ;
    if (mag < 0) {  // fold the sign of dim(J)^s into the phase
        mag = -mag;
        phase = phase + Phase(rat(1, 2));
    }

    HopfResult res;
    res.scalar_magnitude = mag;
    res.scalar_phase = phase;
    res.fixed_power = Js;
    if (mag == 1 && phase.is_one()) {
        res.verdict = HopfVerdict::case2_theta_balanced;
        return res;
    }
    auto entry = r.s_entry(X, P);
    if (entry && expression_is_zero(*entry)) {
        res.verdict = HopfVerdict::case1_Szero;
        res.s_entry_checked = *entry;
        return res;
    }
    res.verdict = HopfVerdict::violation;
    if (entry) res.s_entry_checked = *entry;
    return res;
}

// Pointed (group-like) ribbon data for a finite abelian group given as a
// product of cyclic factors; fusion is the group law, twists are trivial and
// every dimension is 1.  Labels are the exponent tuples, e.g. "1,0".
inline RibbonData pointed_ribbon_data(const std::vector<long>& cyclic_orders) {
    std::vector<std::vector<long>> elements{{}};
    for (long n : cyclic_orders) {
        std::vector<std::vector<long>> next;
        for (const auto& e : elements)
            for (long a = 0; a < n; ++a) {
                auto e2 = e;
                e2.push_back(a);
                next.push_back(std::move(e2));
            }
        elements = std::move(next);
    }
    auto name = [](const std::vector<long>& e) {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i)
            s += (i ? "," : "") + std::to_string(e[i]);
        return e.empty() ? std::string("0") : s;
    };
    RibbonData r;
    for (const auto& e : elements) {
        r.labels.push_back(name(e));
        r.twists[name(e)] = Phase();
        r.dims[name(e)] = "1";
    }
    r.unit = name(std::vector<long>(cyclic_orders.size(), 0));
    for (const auto& a : elements)
        for (const auto& b : elements) {
            std::vector<long> c(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                c[i] = (a[i] + b[i]) % cyclic_orders[i];
            r.fusion[{name(a), name(b)}][name(c)] = 1;
        }
    return r;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline RibbonData ribbon_from_json(const nlohmann::json& j) {
    RibbonData r;
    for (const auto& l : j.at("labels")) r.labels.push_back(l.get<std::string>());
    r.unit = j.at("unit").get<std::string>();
    for (const auto& f : j.at("fusion"))
        r.fusion[{f.at("i").get<std::string>(), f.at("j").get<std::string>()}]
                [f.at("k").get<std::string>()] = f.value("mult", 1L);
    for (const auto& [label, t] : j.at("twists").items())
        r.twists[label] = Phase(t.is_number_integer() ? Rational(t.get<long>())
                                                      : parse_rational(t.get<std::string>()));
    if (j.contains("S"))
        for (const auto& [key, v] : j.at("S").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("ribbon data: S key must be \"i,j\"");
            std::string value = v.is_string() ? v.get<std::string>() : v.dump();
            r.S[{key.substr(0, comma), key.substr(comma + 1)}] = value;
        }
    if (j.contains("dims"))
        for (const auto& [label, v] : j.at("dims").items())
            r.dims[label] = v.is_string() ? v.get<std::string>() : v.dump();
    if (j.contains("modified_dims"))
        for (const auto& [label, v] : j.at("modified_dims").items())
            r.modified_dims[label] = v.is_string() ? v.get<std::string>() : v.dump();
    validate_ribbon(r);
    return r;
}

inline nlohmann::json ribbon_to_json(const RibbonData& r) {
    nlohmann::json j;
    j["labels"] = r.labels;
    j["unit"] = r.unit;
    j["fusion"] = nlohmann::json::array();
    for (const auto& [ij, prods] : r.fusion)
        for (const auto& [k, m] : prods)
            j["fusion"].push_back({{"i", ij.first}, {"j", ij.second}, {"k", k}, {"mult", m}});
    j["twists"] = nlohmann::json::object();
    for (const auto& [label, t] : r.twists) j["twists"][label] = to_string(t.value());
    if (!r.S.empty()) {
        j["S"] = nlohmann::json::object();
        for (const auto& [ij, v] : r.S) j["S"][ij.first + "," + ij.second] = v;
    }
    if (!r.dims.empty()) {
        j["dims"] = nlohmann::json::object();
        for (const auto& [label, v] : r.dims) j["dims"][label] = v;
    }
    if (!r.modified_dims.empty()) {
        j["modified_dims"] = nlohmann::json::object();
        for (const auto& [label, v] : r.modified_dims) j["modified_dims"][label] = v;
    }
    return j;
}

inline RibbonData ribbon_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ribbon data file: " + path);
    nlohmann::json j;
    in >> j;
    return ribbon_from_json(j);
}

}  // namespace voakit
