#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "picalc/encode.hpp"
#include "picalc/equiv.hpp"
#include "picalc/parse.hpp"

using namespace picalc;

namespace {
Exploration<Pi> bts_pi(const char* text) {
    PiProgram p = parse_pi(text, Mode::Im);
    return explore_bts_pi(p.term, p.env);
}
Exploration<Ccs> bts_T(const char* text) {
    PiProgram p = parse_pi(text, Mode::Im);
    Translation t = translate_T(p.term, p.env, Mode::Im);
    return explore_bts_ccs(t.term, t.env);
}
Exploration<Ccs> bts_ccs(const char* text) {
    CcsProgram p = parse_ccs(text);
    return explore_bts_ccs(p.term, p.env);
}
Lts lts_ccs(const char* text) {
    CcsProgram p = parse_ccs(text);
    return explore_lts_ccs(p.term, p.env, {}).graph;
}
} // namespace

TEST_CASE("exploration") {
    auto two = bts_T("x(y).y!w.0 | x!u.u(v).0");
    CHECK(two.graph.complete);
    CHECK(two.graph.size() == 3);
    CHECK(longest_chain(two.graph) == 2);

    auto nil = bts_pi("0");
    CHECK(nil.graph.size() == 1);
    CHECK(nil.graph.edge_count() == 0);
    CHECK(nil.graph.barbs[0].empty());

    CHECK(longest_chain(bts_T("x(y).x(w).w!u.0 | x!v.x!y.y(v).0").graph) == 3);
}

TEST_CASE("exploration bounds") {
    PiProgram p = parse_pi("A(x) := tau.(x!x.0 | A(x))\nA(v)", Mode::Im);
    ExploreLimits l;
    l.max_depth = 5;
    auto ex = explore_bts_pi(p.term, p.env, l);
    CHECK_FALSE(ex.graph.complete);
    CHECK(ex.graph.full_depth == 5);
    CHECK_FALSE(longest_chain(ex.graph));
    l.max_depth = 64;
    l.max_states = 3;
    auto small = explore_bts_pi(p.term, p.env, l);
    CHECK(small.graph.size() <= 3);
    CHECK_FALSE(small.graph.complete);
}

TEST_CASE("barbed bisimilarity") {
    const char* examples[] = {"x(y).y!w.0",
                              "x(y).y!w.0 | x!u.u(v).0",
                              "nu x. x(y).0 | nu x. x!u.0",
                              "nu y. x!y.y!w.0 | x(u).u(v).0",
                              "nu y. x!y.(nu y. y!w.0) | x(u).u(v).0",
                              "x(y).x(w).w!u.0 | x!v.x!y.y(v).0",
                              "nu x. (x(y).y!w.0 | nu u. x!u.u(v).0)"};
    for (const char* text : examples) {
        CAPTURE(std::string(text));
        auto a = bts_pi(text);
        auto b = bts_T(text);
        GameResult r = check_barbed_bisim(a.graph, b.graph);
        CHECK(r.verdict == Verdict::Bisimilar);
        CHECK(testing::classes_are_bisimulation(a.graph, b.graph, Observation::Barbed));
    }
    auto nil = bts_pi("0");
    CHECK(check_barbed_bisim(nil.graph, nil.graph).exact());
    // same reductions, different barbs
    GameResult diff = check_barbed_bisim(bts_pi("x!y.0").graph, bts_pi("v!w.0").graph);
    CHECK(diff.verdict == Verdict::NotBisimilar);
    CHECK(diff.witness.empty());
    CHECK_FALSE(diff.reason.empty());
}

TEST_CASE("the handshake encoding fails with a replayable witness") {
    const char* bb = "x!v.0 | x(y).(y!u.0 | v(w).0)";
    auto p = bts_pi(bb);
    auto e = explore_bts_ccs(translate_E(parse_pi(bb, Mode::Im).term), DefEnv{});
    GameResult r = check_reduction_bisim(p.graph, e.graph);
    CHECK(r.verdict == Verdict::NotBisimilar);
    CHECK(r.witness.size() == 2);
    CHECK(testing::witness_replays(p.graph, e.graph, r));
    CHECK_FALSE(r.witness.back().response);
    CHECK(check_barbed_bisim(p.graph, e.graph).verdict == Verdict::NotBisimilar);
}

TEST_CASE("reduction bisimilarity") {
    CHECK(check_reduction_bisim(bts_ccs("tau.0").graph, bts_ccs("tau.tau.0").graph).verdict == Verdict::NotBisimilar);
    CHECK(check_reduction_bisim(bts_pi("x!y.0").graph, bts_pi("v!w.0").graph).exact());
}

TEST_CASE("strong bisimilarity on labelled systems") {
    CHECK(check_strong_bisim(lts_ccs("a.0"), lts_ccs("a.0 + a.0")).exact());
    CHECK(check_strong_bisim(lts_ccs("a.0"), lts_ccs("a.a.0")).verdict == Verdict::NotBisimilar);
    PiProgram p = parse_pi("x(y).y!w.0 | x!u.u(v).0", Mode::Im);
    Translation t = translate_T(p.term, p.env, Mode::Im);
    NameSet pool = default_pool(p.term, 1);
    auto l1 = explore_lts_pi(p.term, p.env, PiSemantics::EarlySymbolic, pool).graph;
    auto l2 = explore_lts_ccs(t.term, t.env, pool).graph;
    CHECK(check_strong_bisim(l1, l2).exact());
    NameSet other = pool;
    other.insert(Name::pub("q"));
    auto l3 = explore_lts_ccs(t.term, t.env, other).graph;
    CHECK_THROWS_AS(check_strong_bisim(l1, l3), std::invalid_argument);
}

TEST_CASE("partition refinement agrees with the naive fixpoint") {
    testing::Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        Lts a = testing::random_lts(rng, 20), b = testing::random_lts(rng, 20);
        GameResult r = check_strong_bisim(a, b);
        CHECK(r.holds() == testing::naive_bisimilar(a, b));
        if (!r.holds())
            CHECK(testing::witness_replays(a, b, r));
        CHECK(testing::classes_are_bisimulation(a, b, Observation::Labelled));
    }
}

TEST_CASE("depth-qualified verdicts are monotone") {
    PiProgram p = parse_pi("Server(c) := c(r).(r!c.0 | Server(c))\nServer(c) | nu r. c!r.r(z).0", Mode::Im);
    Translation t = translate_T(p.term, p.env, Mode::Im);
    // no depth may refute what a deeper exploration still accepts
    for (std::size_t d = 1; d <= 8; ++d) {
        ExploreLimits l;
        l.max_depth = d;
        GameResult r = check_barbed_bisim(explore_bts_pi(p.term, p.env, l).graph, explore_bts_ccs(t.term, t.env, l).graph);
        CAPTURE(d);
        CHECK(r.holds());
        if (r.verdict == Verdict::BisimilarToDepth)
            CHECK(r.depth >= 1);
    }
}

TEST_CASE("weak barb probes") {
    CcsProgram a = parse_ccs("A := x0?y.0 + tau.(A[shift x])\nA");
    BarbSet b = weak_barb_probe_ccs(a.term, a.env, 3);
    CHECK(b == BarbSet{{Name::pub("x0"), false}, {Name::pub("x1"), false}, {Name::pub("x2"), false}, {Name::pub("x3"), false}});
    CHECK(weak_barb_probe_pi(parse_pi("0", Mode::Im).term, DefEnv{}, 5).empty());
    PiProgram p = parse_pi("x!v.0 | x(y).(y!u.0 | v(w).0)", Mode::Im);
    for (const auto& barb : weak_barb_probe_pi(p.term, p.env, 4))
        CHECK(free_names(p.term).contains(barb.name));
}

TEST_CASE("DOT export") {
    auto ex = bts_pi("x(y).y!w.0 | x!u.u(v).0");
    std::string dot = to_dot(ex.graph, "ex2");
    CHECK(dot.starts_with("digraph"));
    CHECK(dot.find("bold") != std::string::npos);
    CHECK(dot == to_dot(bts_pi("x(y).y!w.0 | x!u.u(v).0").graph, "ex2"));
}
