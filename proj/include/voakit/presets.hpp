#pragma once
// Ready-made contexts: betagamma systems S(n), bc systems E(m), mixed
// S(n)xE(m), Heisenberg algebras, affine sl2 (symbolic or numeric level), and
// contexts loaded from an OPE file. Each preset carries a catalogue of named
// states (the Heisenberg field h, the W3 vectors, currents, Sugawara vectors,
// ...) usable in state expressions. Generator charges are the eigenvalues of
// h_(0) (respectively H_(0) for sl2), as computed by the engine itself; the
// preset tests pin these down.

#include "expr.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>

namespace voakit {

struct Preset {
    std::string name;
    VoaContext ctx;
    std::map<std::string, State> named;

    State state(const std::string& expr) const { return ExprParser(ctx, named).parse(expr); }
    State named_state(const std::string& n) const {
        auto it = named.find(n);
        if (it == named.end()) throw std::invalid_argument("no named state '" + n + "'");
        return it->second;
    }
};

namespace detail {
// right-nested normally ordered product of a list of states
inline State nops(const VoaContext& ctx, std::vector<State> fs) {
    State v = fs.back();
    for (size_t i = fs.size() - 1; i-- > 0;) v = ctx.nop(fs[i], v);
    return v;
}

// The Wang c=-2 W3 generators built from one weight-1/2 pair (B,G):
//   L = :BBGG: + 2:B dG: - 2:(dB) G:
//   W = :BBBGGG: + 3:BB(dG)G: - 6:(dB)BGG: - 6:(dB)dG: + 3:(d^2B)G:
inline State wang_L(const VoaContext& c, const State& B, const State& G) {
    return nops(c, {B, B, G, G}) + nops(c, {B, c.deriv(G)}) * Scalar(2) -
           nops(c, {c.deriv(B), G}) * Scalar(2);
}
inline State wang_W(const VoaContext& c, const State& B, const State& G) {
    return nops(c, {B, B, B, G, G, G}) + nops(c, {B, B, c.deriv(G), G}) * Scalar(3) -
           nops(c, {c.deriv(B), B, G, G}) * Scalar(6) -
           nops(c, {c.deriv(B), c.deriv(G)}) * Scalar(6) +
           nops(c, {c.deriv(B, 2), G}) * Scalar(3);
}

// The generating pair (L, W) above is normalized so that L = 2*Lvir where
// Lvir is the Virasoro vector of the commutant (central charge -2), and
// Wprim = W + (3/4)dL is the weight-3 Lvir-primary. Both normalizations are
// published alongside the plain pair.
inline void wang_named(Preset& p, const std::string& suffix, const State& L, const State& W) {
    p.named["L" + suffix] = L;
    p.named["W" + suffix] = W;
    p.named["Lvir" + suffix] = L * Scalar(rat(1, 2));
    p.named["Wprim" + suffix] = W + p.ctx.deriv(L) * Scalar(rat(3, 4));
}
}  // namespace detail

// S(n): n symplectic boson pairs, h = sum_i :beta^i gamma^i:
inline Preset beta_gamma(int n) {
    Preset p;
    p.name = "bg:" + std::to_string(n);
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        int b = p.ctx.add_generator({"beta" + si, 0, rat(1, 2), {rat(-1)}});
        int g = p.ctx.add_generator({"gamma" + si, 0, rat(1, 2), {rat(1)}});
        p.ctx.set_ope(b, g, 0, State::vacuum());
    }
    auto B = [&](int i) { return p.ctx.gen_state("beta" + std::to_string(i)); };
    auto G = [&](int i) { return p.ctx.gen_state("gamma" + std::to_string(i)); };
    State h;
    for (int i = 1; i <= n; ++i) h += p.ctx.nop(B(i), G(i));
    p.named["h"] = h;
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        detail::wang_named(p, si, detail::wang_L(p.ctx, B(i), G(i)),
                           detail::wang_W(p.ctx, B(i), G(i)));
    }
    if (n == 1)
        for (const char* nm : {"L", "W", "Lvir", "Wprim"})
            p.named[nm] = p.named[std::string(nm) + "1"];
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
            if (j != k)
                p.named["X" + std::to_string(j) + std::to_string(k)] =
                    p.ctx.nop(B(j), G(k)) * Scalar(-1);
    for (int l = 1; l < n; ++l)
        p.named["H" + std::to_string(l)] =
            p.ctx.nop(B(1), G(1)) * Scalar(-1) + p.ctx.nop(B(l + 1), G(l + 1));
    if (n == 2) {
        const VoaContext& c = p.ctx;
        using detail::nops;
        p.named["P"] = nops(c, {B(1), c.deriv(G(2))}) - nops(c, {c.deriv(B(1)), G(2)}) +
                       nops(c, {B(1), B(1), G(1), G(2)}) * Scalar(rat(1, 3)) +
                       nops(c, {B(1), B(2), G(2), G(2)}) * Scalar(rat(2, 3));
        p.named["Q"] = nops(c, {B(2), c.deriv(G(1))}) - nops(c, {c.deriv(B(2)), G(1)}) +
                       nops(c, {B(1), B(2), G(1), G(1)}) * Scalar(rat(1, 3)) +
                       nops(c, {B(2), B(2), G(1), G(2)}) * Scalar(rat(2, 3));
        p.named["R"] = p.named["L1"] - p.named["L2"];
        State H1 = p.named["H1"];
        p.named["Lsug"] = c.nop(p.named["X12"], p.named["X21"]) +
                          c.nop(H1, H1) * Scalar(rat(1, 4)) - c.deriv(H1) * Scalar(rat(1, 2));
    }
    return p;
}

// E(m): m fermionic pairs, h = -sum_i :b^i c^i:
inline Preset bc_system(int m) {
    Preset p;
    p.name = "bc:" + std::to_string(m);
    for (int i = 1; i <= m; ++i) {
        std::string si = std::to_string(i);
        int b = p.ctx.add_generator({"b" + si, 1, rat(1, 2), {rat(-1)}});
        int c = p.ctx.add_generator({"c" + si, 1, rat(1, 2), {rat(1)}});
        p.ctx.set_ope(b, c, 0, State::vacuum());
    }
    auto B = [&](int i) { return p.ctx.gen_state("b" + std::to_string(i)); };
    auto C = [&](int i) { return p.ctx.gen_state("c" + std::to_string(i)); };
    State h;
    for (int i = 1; i <= m; ++i) h -= p.ctx.nop(B(i), C(i));
    p.named["h"] = h;
    for (int r = 1; r <= m; ++r)
        for (int s = 1; s <= m; ++s)
            if (r != s)
                p.named["Xbar" + std::to_string(r) + std::to_string(s)] = p.ctx.nop(B(r), C(s));
    for (int u = 1; u < m; ++u)
        p.named["Hbar" + std::to_string(u)] =
            p.ctx.nop(B(1), C(1)) - p.ctx.nop(B(u + 1), C(u + 1));
    return p;
}

// S(n) x E(m): h = sum :beta gamma: - sum :b c:
inline Preset bg_bc(int n, int m) {
    Preset p;
    p.name = "bgbc:" + std::to_string(n) + "," + std::to_string(m);
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        int b = p.ctx.add_generator({"beta" + si, 0, rat(1, 2), {rat(-1)}});
        int g = p.ctx.add_generator({"gamma" + si, 0, rat(1, 2), {rat(1)}});
        p.ctx.set_ope(b, g, 0, State::vacuum());
    }
    for (int i = 1; i <= m; ++i) {
        std::string si = std::to_string(i);
        int b = p.ctx.add_generator({"b" + si, 1, rat(1, 2), {rat(-1)}});
        int c = p.ctx.add_generator({"c" + si, 1, rat(1, 2), {rat(1)}});
        p.ctx.set_ope(b, c, 0, State::vacuum());
    }
    auto st = [&](const std::string& nm) { return p.ctx.gen_state(nm); };
    State h;
    for (int i = 1; i <= n; ++i)
        h += p.ctx.nop(st("beta" + std::to_string(i)), st("gamma" + std::to_string(i)));
    for (int i = 1; i <= m; ++i)
        h -= p.ctx.nop(st("b" + std::to_string(i)), st("c" + std::to_string(i)));
    p.named["h"] = h;
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        detail::wang_named(p, si, detail::wang_L(p.ctx, st("beta" + si), st("gamma" + si)),
                           detail::wang_W(p.ctx, st("beta" + si), st("gamma" + si)));
    }
    for (int i = 1; i <= n; ++i)
        for (int r = 1; r <= m; ++r) {
            std::string ir = std::to_string(i) + std::to_string(r);
            p.named["J" + ir] =
                p.ctx.nop(st("beta" + std::to_string(i)), st("gamma" + std::to_string(i))) -
                p.ctx.nop(st("b" + std::to_string(r)), st("c" + std::to_string(r)));
            p.named["psi" + ir] =
                p.ctx.nop(st("beta" + std::to_string(i)), st("c" + std::to_string(r)));
            p.named["phi" + ir] =
                p.ctx.nop(st("b" + std::to_string(r)), st("gamma" + std::to_string(i)));
        }
    return p;
}

// Heisenberg algebra of the given Gram matrix: a^i_(1) a^j = G_ij 1.
inline Preset heisenberg(const std::vector<std::vector<Rational>>& gram) {
    Preset p;
    int rank = int(gram.size());
    p.name = "heis:" + std::to_string(rank);
    for (int i = 1; i <= rank; ++i)
        p.ctx.add_generator({"a" + std::to_string(i), 0, rat(1), {}});
    for (int i = 0; i < rank; ++i)
        for (int j = i; j < rank; ++j)
            if (gram[size_t(i)][size_t(j)] != 0)
                p.ctx.set_ope(i, j, 1, State::vacuum(Scalar(gram[size_t(i)][size_t(j)])));
    return p;
}

// Affine sl2, symbolic level when no numeric level is given.
inline Preset affine_sl2(std::optional<Rational> level = std::nullopt) {
    Preset p;
    Scalar k = level ? Scalar(*level) : Scalar::level();
    p.name = level ? "sl2:" + to_string(*level) : "sl2";
    p.ctx.add_generator({"X", 0, rat(1), {rat(2)}});
    p.ctx.add_generator({"H", 0, rat(1), {rat(0)}});
    p.ctx.add_generator({"Y", 0, rat(1), {rat(-2)}});
    p.ctx.set_ope("X", "Y", 1, State::vacuum(k));
    p.ctx.set_ope("X", "Y", 0, p.ctx.gen_state("H"));
    p.ctx.set_ope("H", "X", 0, p.ctx.gen_state("X") * Scalar(2));
    p.ctx.set_ope("H", "Y", 0, p.ctx.gen_state("Y") * Scalar(-2));
    p.ctx.set_ope("H", "H", 1, State::vacuum(k * Scalar(2)));
    const VoaContext& c = p.ctx;
    State X = c.gen_state("X"), H = c.gen_state("H"), Y = c.gen_state("Y");
    if (!level || *level != -2) {
        Scalar norm = Scalar(1) / (Scalar(2) * (k + Scalar(2)));
        p.named["L"] = (c.nop(X, Y) + c.nop(Y, X) + c.nop(H, H) * Scalar(rat(1, 2))) * norm;
    }
    for (int i = 0; i <= 6; ++i)
        p.named["U0_" + std::to_string(i)] = c.nop(X, c.deriv(Y, i));
    return p;
}

// Context from an OPE file (JSON).
inline Preset from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open OPE file '" + path + "'");
    nlohmann::json j;
    in >> j;
    Preset p;
    p.name = "file:" + path;
    for (auto& g : j.at("generators")) {
        GeneratorSpec spec;
        spec.name = g.at("name").get<std::string>();
        spec.parity = g.value("parity", 0);
        spec.weight = parse_rational(g.at("weight").get<std::string>());
        if (g.contains("charges"))
            for (auto& q : g.at("charges"))
                spec.charges.push_back(parse_rational(q.get<std::string>()));
        p.ctx.add_generator(std::move(spec));
    }
    ExprParser parser(p.ctx);
    for (auto& e : j.at("ope")) {
        int a = p.ctx.index_of(e.at("a").get<std::string>());
        int b = p.ctx.index_of(e.at("b").get<std::string>());
        for (auto& [ns, expr] : e.at("products").items())
            p.ctx.set_ope(a, b, std::stol(ns), parser.parse(expr.get<std::string>()));
    }
    if (j.contains("named"))
        for (auto& [nm, expr] : j.at("named").items())
            p.named[nm] = p.state(expr.get<std::string>());
    return p;
}

// "bg:2", "bc:3", "bgbc:1,1", "sl2", "sl2:-4/3", "heis:r" (identity gram),
// "file:path.json"
inline Preset preset_by_name(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "bg") return beta_gamma(std::stoi(arg));
    if (kind == "bc") return bc_system(std::stoi(arg));
    if (kind == "bgbc") {
        auto comma = arg.find(',');
        return bg_bc(std::stoi(arg.substr(0, comma)), std::stoi(arg.substr(comma + 1)));
    }
    if (kind == "sl2")
        return arg.empty() ? affine_sl2() : affine_sl2(parse_rational(arg));
    if (kind == "heis") {
        int r = std::stoi(arg);
        std::vector<std::vector<Rational>> gram(size_t(r), std::vector<Rational>(size_t(r), 0));
        for (int i = 0; i < r; ++i) gram[size_t(i)][size_t(i)] = 1;
        return heisenberg(gram);
    }
    if (kind == "file") return from_file(arg);
    throw std::invalid_argument("unknown preset '" + spec + "'");
}

}  // namespace voakit
