#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "picalc/ccs_sos.hpp"
#include "picalc/encode.hpp"
#include "picalc/parse.hpp"

using namespace picalc;

namespace {
const Name x = Name::pub("x"), y = Name::pub("y"), z = Name::pub("z"), v = Name::pub("v"), w = Name::pub("w");

CcsProgram cc(const char* text) { return parse_ccs(text); }

Translation T(const char* pi_text) {
    PiProgram p = parse_pi(pi_text, Mode::Im);
    return translate_T(p.term, p.env, Mode::Im);
}

std::set<std::pair<std::string, std::string>> moves(const std::vector<CcsTransition>& ts) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& t : ts)
        out.emplace(t.action.str(), ccs_key(t.target));
    return out;
}

std::string key(const char* text) { return ccs_key(parse_ccs(text, "A := 0").term); }
} // namespace

TEST_CASE("the communication function") {
    auto out = Action::free_out({}, x, y);
    CHECK(gamma(out, Action::free_in({}, x, y)) == Action::silent());
    CHECK(gamma(Action::free_in({}, x, y), out) == Action::silent());
    CHECK(gamma(out, Action::free_in({}, v, y)) == Action::silent(prepend_match({}, x, v)));
    CHECK_FALSE(gamma(out, Action::free_in({}, v, z)));
    CHECK_FALSE(gamma(out, Action::free_out({}, x, y)));
    CHECK_FALSE(gamma(Action::silent(), out));
    // a synchronisation does not synchronise again
    CHECK_FALSE(gamma(Action::silent(prepend_match({}, x, v)), out));
}

TEST_CASE("classic CCS steps") {
    auto p = cc("a.0 | 'a.0");
    CHECK(moves(step_ccs(p.term, p.env)).contains({"tau", key("0 | 0")}));
    auto r = cc("(a.0) \\ {a}");
    CHECK(step_ccs(r.term, r.env).empty());
    auto rec = cc("A := x0?y.0 + tau.(A[shift x])\nA");
    CHECK(moves(step_ccs(rec.term, rec.env)) ==
          std::set<std::pair<std::string, std::string>>{{"tau", key("A[shift x]")}, {"x0?y", key("0")}});
}

TEST_CASE("relabelling and restriction") {
    auto p = cc("(x!y.0)[map: x->v]");
    CHECK(moves(step_ccs(p.term, p.env)) == std::set<std::pair<std::string, std::string>>{{"v!y", key("0[map: x->v]")}});
    auto q = cc("(x!y.0 + v!y.0) \\ {x}");
    auto ms = moves(step_ccs(q.term, q.env));
    REQUIRE(ms.size() == 1);
    CHECK(ms.begin()->first == "v!y");
}

TEST_CASE("trigger guards only the first action") {
    auto t = cc("[x=v] => y!w.z!w.0");
    auto ts = step_ccs(t.term, t.env);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.str() == "[x=v]y!w");
    auto next = step_ccs(ts[0].target, t.env);
    REQUIRE(next.size() == 1);
    CHECK(next[0].action.str() == "z!w");
}

TEST_CASE("demand-driven τ on translations") {
    Translation t = T("x(y).y!w.0 | x!u.u(v).0");
    auto first = step_gamma_tau(t.term, t.env);
    REQUIRE(first.size() == 1);
    auto second = step_gamma_tau(first[0], t.env);
    REQUIRE(second.size() == 1);
    CHECK(ccs_key(second[0]) == key("(0)[u/y][l] || (0)[w/v][r]"));
    CHECK(step_gamma_tau(second[0], t.env).empty());

    Translation sep = T("nu x. x(y).0 | nu x. x!u.0");
    CHECK(step_gamma_tau(sep.term, sep.env).empty());
    CHECK(barbs_ccs(sep.term, sep.env).empty());
    CHECK(step_gamma_tau(parse_ccs("0 || 0").term, DefEnv{}).empty());
}

TEST_CASE("visible steps draw input objects from the pool") {
    Translation one = T("x(y).y!w.0");
    auto ts = step_gamma_visible(one.term, one.env, {Name::pub("z1")});
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.str() == "x?z1");
    CHECK(ccs_key(ts[0].target) == key("(y!w.0)[z1/y]"));

    Translation priv = T("nu x. x(y).0");
    auto ps = step_gamma_visible(priv.term, priv.env, {z});
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].action.str() == "{}p?z");
    CHECK_FALSE(ps[0].action.observe());

    auto out = cc("x!y.0");
    CHECK(moves(step_gamma_visible(out.term, out.env, {})) == std::set<std::pair<std::string, std::string>>{{"x!y", key("0")}});
}

TEST_CASE("CCS barbs") {
    CHECK(barbs_ccs(parse_ccs("x!y.0").term, DefEnv{}) == BarbSet{{x, true}});
    Translation t = T("x!v.0 | x(y).y(w).0");
    CHECK(barbs_ccs(t.term, t.env) == BarbSet{{x, true}, {x, false}});
    NameSet pool = reachable_names(t.term, t.env);
    pool.insert(fresh_name(pool));
    BarbSet observed;
    for (const auto& tr : step_gamma_visible(t.term, t.env, pool))
        if (auto b = tr.action.observe())
            observed.insert(*b);
    CHECK(observed == barbs_ccs(t.term, t.env));
}

TEST_CASE("eager instantiation agrees with demand-driven τ") {
    testing::Rng rng(3);
    testing::PiGen gen(rng, {});
    for (int i = 0; i < 60; ++i) {
        Pi p = gen.term();
        Translation t = translate_T(p, DefEnv{}, Mode::Im);
        CAPTURE(print(p));
        NameSet pool = testing::eager_pool(t.term, t.env);
        CHECK(testing::lazy_tau_keys(t.term, t.env) == testing::eager_tau_keys(t.term, t.env, pool));
        // one level deeper as well
        for (const auto& s : step_gamma_tau(t.term, t.env))
            CHECK(testing::lazy_tau_keys(s, t.env) == testing::eager_tau_keys(s, t.env, testing::eager_pool(s, t.env)));
    }
}
