#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "picalc/errors.hpp"
#include "picalc/parse.hpp"
#include "picalc/pi_sos.hpp"

using namespace picalc;
using testing::keys_of;
using testing::LabelledKeys;

namespace {
const Name x = Name::pub("x"), y = Name::pub("y"), v = Name::pub("v"), w = Name::pub("w"), u = Name::pub("u");

PiProgram im(const char* text) { return parse_pi(text, Mode::Im); }
PiProgram strict(const char* text) { return parse_pi(text, Mode::Strict); }

// (label, alpha key of target) pairs
LabelledKeys all(const std::vector<PiTransition>& ts) {
    return keys_of(ts, [](const Action&) { return true; });
}

bool has(const std::vector<PiTransition>& ts, const std::string& label, const std::string& target, Mode mode = Mode::Im) {
    return all(ts).contains({label, alpha_key(parse_pi(target, mode).term)});
}

std::set<std::string> labels(const std::vector<PiTransition>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts)
        out.insert(t.action.str());
    return out;
}
} // namespace

TEST_CASE("late semantics") {
    auto t = im("tau.0");
    auto ts = step_late(t.term, t.env);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.is_tau());

    auto com = im("x!y.0 | x(z).z!w.0");
    CHECK(has(step_late(com.term, com.env), "tau", "0 | y!w.0"));

    auto open = im("nu y. x!y.y!w.0");
    auto os = step_late(open.term, open.env);
    REQUIRE(os.size() == 1);
    CHECK(os[0].action.kind() == ActionKind::BoundOut);
    CHECK(os[0].action.subject() == x);

    auto in = im("x(y).y!w.0");
    auto is = step_late(in.term, in.env);
    REQUIRE(is.size() == 1);
    CHECK(is[0].action.kind() == ActionKind::BoundIn);
}

TEST_CASE("early semantics instantiates inputs over the pool") {
    auto p = im("x(y).y!w.0");
    auto ts = step_early(p.term, p.env, {x, v});
    CHECK(labels(ts) == std::set<std::string>{"x?v", "x?x"});
    CHECK(has(ts, "x?v", "v!w.0"));

    // alpha renaming lets a restricted y pass a free y
    auto rescue = im("x!y.0 | nu y. x(z).0");
    bool tau = false;
    for (const auto& tr : step_early(rescue.term, rescue.env, default_pool(rescue.term)))
        tau = tau || tr.action.is_tau();
    CHECK(tau);

    auto bb = im("x!v.0 | x(y).(y!u.0 | v(w).0)");
    auto taus = step_early_tau(bb.term, bb.env);
    REQUIRE(taus.size() == 1);
    CHECK(alpha_eq(taus[0], im("0 | (v!u.0 | v(w).0)").term));
    CHECK(step_early_tau(taus[0], bb.env).size() == 1);
}

TEST_CASE("close extrudes the restricted name") {
    auto p = im("nu y. x!y.y!w.0 | x(u).u(v).0");
    auto taus = step_early_tau(p.term, p.env);
    REQUIRE(taus.size() == 1);
    CHECK(alpha_eq(taus[0], im("nu y. (y!w.0 | y(v).0)").term));
}

TEST_CASE("symbolic semantics records matches") {
    auto m = strict("[x=y]tau.0");
    auto ms = step_late_symbolic(m.term, m.env);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].action.str() == "[x=y]tau");
    CHECK(step_late(m.term, m.env).empty());

    auto c = im("x!y.0 | v(z).0");
    CHECK(has(step_late_symbolic(c.term, c.env), "[x=v]tau", "0 | 0"));

    auto trivial = im("[x=x]tau.0");
    CHECK(labels(step_late_symbolic(trivial.term, trivial.env)) == std::set<std::string>{"tau"});

    auto same_ch = im("v!u.0 | v(w).0");
    CHECK(labels(step_early_symbolic(same_ch.term, same_ch.env, {})).contains("tau"));
    auto diff = im("y!u.0 | v(w).0");
    auto ds = step_early_symbolic_tau(diff.term, diff.env);
    CHECK(labels(ds) == std::set<std::string>{"[y=v]tau"});
    CHECK(step_early_symbolic(parse_pi("0", Mode::Im).term, DefEnv{}, {x}).empty());
}

TEST_CASE("barbs") {
    auto p = im("x!y.0 | v(w).0");
    CHECK(barbs_pi(p.term, p.env) == BarbSet{{x, true}, {v, false}});
    auto r = im("nu x. x!y.0");
    CHECK(barbs_pi(r.term, r.env).empty());
    auto g = im("[x=y]u!v.0");
    CHECK(barbs_pi(g.term, g.env).empty());
    for (const auto& t : step_early_symbolic(g.term, g.env, default_pool(g.term)))
        CHECK_FALSE(t.action.observe());
}

TEST_CASE("recursion unfolds lazily") {
    auto p = im("A(x) := x!x.A(x)\nA(v)");
    auto ts = step_late(p.term, p.env);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].action.str() == "v!v");
    CHECK(alpha_eq(ts[0].target, p.term));

    auto loop = im("B(x) := B(x)\nB(v)");
    CHECK_THROWS_AS(step_late(loop.term, loop.env), SemanticsError);
}

TEST_CASE("restriction-bound names and clash freedom") {
    auto p = im("nu y. (x!y.0 | nu z. z!w.0)");
    CHECK(rn(p.term, p.env) == NameSet{y, Name::pub("z")});
    auto bad = im("nu y. y!v.0 | nu y. y(w).0");
    ClashReport r = is_clash_free(bad.term, bad.env);
    CHECK_FALSE(r.clash_free);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().find("RN(Q₁) ∩ RN(Q₂) ≠ ∅") != std::string::npos);
    CHECK(is_clash_free(im("x!y.0").term, DefEnv{}).clash_free);
    auto nested = im("nu y. nu y. y!v.0");
    CHECK_FALSE(is_clash_free(nested.term, nested.env).clash_free);
    auto rec = im("A(x) := nu y. x!y.A(x)\nA(v)");
    CHECK_FALSE(h_closure(rec.term, rec.env).empty());
    CHECK(rn(rec.term, rec.env) == NameSet{y});
}

TEST_CASE("engines agree on random strict terms") {
    testing::Rng rng(11);
    testing::PiGenOptions opts;
    opts.mode = Mode::Strict;
    testing::PiGen gen(rng, opts);
    auto not_input = [](const Action& a) { return a.kind() != ActionKind::FreeIn && a.kind() != ActionKind::BoundIn; };
    auto unguarded = [](const Action& a) { return a.matches().empty(); };
    for (int i = 0; i < 100; ++i) {
        Pi p = gen.term();
        CAPTURE(print(p));
        NameSet pool = default_pool(p);
        auto early = step_early(p, DefEnv{}, pool);
        CHECK(keys_of(early, not_input) == keys_of(step_late(p, DefEnv{}), not_input));
        CHECK(keys_of(step_early_symbolic(p, DefEnv{}, pool), unguarded) == all(early));
        CHECK(testing::observed_barbs(early) == barbs_pi(p, DefEnv{}));
    }
}
