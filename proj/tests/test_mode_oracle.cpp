#include <catch2/catch_amalgamated.hpp>

#include <voakit/axioms.hpp>

#include "mode_oracle.hpp"

#include <random>

using namespace voakit;

namespace {

struct TestSystem {
    VoaContext ctx;
    oracle::FreeSpec spec;
    std::string name;
};

// n betagamma pairs followed by m bc pairs, mirroring both the engine context
// and the oracle contraction table from the same raw data.
TestSystem free_system(int nbg, int nbc) {
    TestSystem s;
    s.name = "bg^" + std::to_string(nbg) + " bc^" + std::to_string(nbc);
    for (int i = 0; i < nbg; ++i) {
        int b = s.ctx.add_generator({"beta" + std::to_string(i), 0, rat(1, 2), {rat(1)}});
        int g = s.ctx.add_generator({"gamma" + std::to_string(i), 0, rat(1, 2), {rat(-1)}});
        s.ctx.set_ope(b, g, 0, State::vacuum());
        s.spec.eps[{b, g}] = 1;
        s.spec.eps[{g, b}] = -1;
    }
    for (int i = 0; i < nbc; ++i) {
        int b = s.ctx.add_generator({"b" + std::to_string(i), 1, rat(1, 2), {rat(1)}});
        int c = s.ctx.add_generator({"c" + std::to_string(i), 1, rat(1, 2), {rat(-1)}});
        s.ctx.set_ope(b, c, 0, State::vacuum());
        s.spec.eps[{b, c}] = 1;
        s.spec.eps[{c, b}] = 1;
    }
    for (auto& g : s.ctx.gens) {
        s.spec.parity.push_back(g.parity);
        s.spec.weight.push_back(g.weight);
    }
    return s;
}

}  // namespace

TEST_CASE("oracle ground rules") {
    auto s = free_system(1, 0);
    // vec(:beta gamma:) is one creation pair
    Monomial bg({{0, 0}, {1, 0}});
    auto v = oracle::vec_of_mono(s.spec, bg);
    REQUIRE(v.size() == 1);
    CHECK(v.begin()->first == oracle::ModeMono{{0, -1}, {1, -1}});
    CHECK(v.begin()->second == 1);
    // beta_(0) gamma = vacuum
    auto p = oracle::oracle_nth(s.spec, Monomial({{0, 0}}), Monomial({{1, 0}}), 0);
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->first.empty());
    CHECK(p.begin()->second == 1);
}

TEST_CASE("engine agrees with mode expansion up to weight 6") {
    std::mt19937_64 rng(7);
    for (auto& sys : {free_system(1, 0), free_system(0, 1), free_system(2, 1), free_system(1, 2)}) {
        int checked = 0;
        while (checked < 60) {
            Monomial a = random_monomial(sys.ctx, rng, 3, 2);
            Monomial b = random_monomial(sys.ctx, rng, 3, 2);
            Rational w = sys.ctx.weight_of(a) + sys.ctx.weight_of(b);
            if (w > 6) continue;
            long nmax = to_long(floor_rat(w - 1));
            std::uniform_int_distribution<long> nd(-3, nmax);
            long n = nd(rng);
            State engine = sys.ctx.nth(State::single(a), State::single(b), n);
            auto expect = oracle::oracle_nth(sys.spec, a, b, n);
            auto got = oracle::vec_of_state(sys.spec, engine);
            INFO(sys.name << ": " << sys.ctx.mono_str(a) << " _(" << n << ") "
                          << sys.ctx.mono_str(b));
            CHECK(got == expect);
            ++checked;
        }
    }
}

TEST_CASE("oracle also confirms composite-on-composite negative products") {
    auto s = free_system(1, 1);
    std::mt19937_64 rng(99);
    // deliberately exercise deep negative modes on nontrivial states
    Monomial a({{0, 1}, {1, 0}});          // :(D beta) gamma:
    Monomial b({{2, 0}, {3, 0}});          // :b c:
    for (long n = -4; n <= 1; ++n) {
        State engine = s.ctx.nth(State::single(a), State::single(b), n);
        auto expect = oracle::oracle_nth(s.spec, a, b, n);
        CHECK(oracle::vec_of_state(s.spec, engine) == expect);
    }
    // and a mixed-parity triple product
    Monomial m({{0, 0}, {2, 0}, {3, 0}});  // :beta b c:
    for (long n = -2; n <= 2; ++n) {
        State engine = s.ctx.nth(State::single(m), State::single(a), n);
        auto expect = oracle::oracle_nth(s.spec, m, a, n);
        CHECK(oracle::vec_of_state(s.spec, engine) == expect);
    }
}
