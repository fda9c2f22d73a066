#include "picalc/fixtures.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "picalc/encode.hpp"
#include "picalc/equiv.hpp"
#include "picalc/parse.hpp"

namespace picalc {

namespace {

class Report {
public:
    Report(std::string id, std::string title) {
        r_.id = std::move(id);
        r_.title = std::move(title);
    }

    void check(bool ok, const std::string& what) {
        r_.lines.push_back((ok ? "PASS " : "FAIL ") + what);
        r_.pass = r_.pass && ok;
    }

    FixtureReport done() && { return std::move(r_); }

private:
    FixtureReport r_;
};

struct Sides {
    PiProgram pi;
    Translation t;
    Exploration<Pi> bts_pi;
    Exploration<Ccs> bts_t;
};

Sides both_sides(const std::string& text, Mode mode = Mode::Im) {
    Sides s;
    s.pi = parse_pi(text, mode);
    s.t = translate_T(s.pi.term, s.pi.env, mode);
    s.bts_pi = explore_bts_pi(s.pi.term, s.pi.env);
    s.bts_t = explore_bts_ccs(s.t.term, s.t.env);
    return s;
}

std::string chain_str(const TransitionGraph& g) {
    auto c = longest_chain(g);
    return c ? std::to_string(*c) : "unbounded";
}

void barbed_exact(Report& r, const Sides& s) {
    GameResult g = check_barbed_bisim(s.bts_pi.graph, s.bts_t.graph);
    r.check(g.verdict == Verdict::Bisimilar,
            "P and T(P) strongly barbed bisimilar (" + g.verdict_str() + ", " + std::to_string(g.states) + " states)");
}

void chain_is(Report& r, const Sides& s, std::size_t n) {
    r.check(s.bts_pi.graph.complete && longest_chain(s.bts_pi.graph) == n,
            "P: longest reduction chain " + chain_str(s.bts_pi.graph) + ", expected " + std::to_string(n));
    r.check(s.bts_t.graph.complete && longest_chain(s.bts_t.graph) == n,
            "T(P): longest reduction chain " + chain_str(s.bts_t.graph) + ", expected " + std::to_string(n));
}

FixtureReport ex1() {
    Report r("ex1", "x(y).'y<w> and its translation");
    Sides s = both_sides("x(y).y!w.0");
    Ccs expected = parse_ccs("sum z. x?z.((y!w.0)[z/y])").term;
    r.check(same(s.t.term, expected), "T(P) = " + print(s.t.term));
    r.check(s.bts_pi.graph.size() == 1 && s.bts_t.graph.size() == 1, "no reductions on either side");
    barbed_exact(r, s);
    NameSet pool = default_pool(s.pi.term, 1);
    auto l1 = explore_lts_pi(s.pi.term, s.pi.env, PiSemantics::EarlySymbolic, pool);
    auto l2 = explore_lts_ccs(s.t.term, s.t.env, pool);
    GameResult g = check_strong_bisim(l1.graph, l2.graph);
    r.check(g.verdict == Verdict::Bisimilar, "symbolic early LTS of P strongly bisimilar to LTS of T(P) (" + g.verdict_str() + ")");
    return std::move(r).done();
}

FixtureReport ex2() {
    Report r("ex2", "x(y).'y<w> | 'x<u>.u(v): communication then a second reduction");
    Sides s = both_sides("x(y).y!w.0 | x!u.u(v).0");
    r.check(s.bts_pi.graph.complete && s.bts_pi.graph.size() == 3, "P: 3 states on the reduction spine");
    r.check(s.bts_t.graph.complete && s.bts_t.graph.size() == 3, "T(P): 3 states on the reduction spine");
    chain_is(r, s, 2);
    barbed_exact(r, s);
    NameSet pool = default_pool(s.pi.term, 1);
    auto l1 = explore_lts_pi(s.pi.term, s.pi.env, PiSemantics::EarlySymbolic, pool);
    auto l2 = explore_lts_ccs(s.t.term, s.t.env, pool);
    GameResult g = check_strong_bisim(l1.graph, l2.graph);
    r.check(g.verdict == Verdict::Bisimilar,
            "symbolic early LTS of P strongly bisimilar to LTS of T(P) over n(P) plus one fresh name (" + g.verdict_str() + ")");
    return std::move(r).done();
}

FixtureReport ex3() {
    Report r("ex3", "(nu x)x(y) | (nu x)'x<u>: separate restrictions never meet");
    Sides s = both_sides("nu x. x(y).0 | nu x. x!u.0");
    for (const auto* g : {&s.bts_pi.graph, &s.bts_t.graph}) {
        r.check(g->complete && g->edge_count() == 0, (g == &s.bts_pi.graph ? "P" : std::string("T(P)")) + ": no reductions");
        r.check(g->barbs[0].empty(), (g == &s.bts_pi.graph ? "P" : std::string("T(P)")) + ": no barbs");
    }
    barbed_exact(r, s);
    return std::move(r).done();
}

FixtureReport ex4() {
    Report r("ex4", "(nu y)('x<y>.'y<w>) | x(u).u(v): scope extrusion");
    Sides s = both_sides("nu y. x!y.y!w.0 | x(u).u(v).0");
    chain_is(r, s, 2);
    barbed_exact(r, s);
    return std::move(r).done();
}

FixtureReport ex5() {
    Report r("ex5", "(nu y)('x<y>.(nu y)'y<w>) | x(u).u(v): the inner y is a different name");
    Sides s = both_sides("nu y. x!y.(nu y. y!w.0) | x(u).u(v).0");
    chain_is(r, s, 1);
    barbed_exact(r, s);
    return std::move(r).done();
}

FixtureReport ex6() {
    Report r("ex6", "x(y).x(w).'w<u> | 'x<v>.'x<y>.y(v): spare names");
    const char* text = "x(y).x(w).w!u.0 | x!v.x!y.y(v).0";
    Sides s = both_sides(text);
    chain_is(r, s, 3);
    barbed_exact(r, s);
    Translation mutant = translate_T(s.pi.term, s.pi.env, Mode::Im, Instantiation::Plain);
    auto bm = explore_bts_ccs(mutant.term, mutant.env);
    GameResult g = check_barbed_bisim(s.bts_pi.graph, bm.graph);
    r.check(g.verdict == Verdict::NotBisimilar,
            "translation with plain substitution instead of spare names is rejected (" + g.verdict_str() + ")");
    return std::move(r).done();
}

FixtureReport ex7() {
    Report r("ex7", "(nu x)(x(y).'y<w> | (nu u)'x<u>.u(v))");
    Sides s = both_sides("nu x. (x(y).y!w.0 | nu u. x!u.u(v).0)");
    chain_is(r, s, 2);
    barbed_exact(r, s);
    return std::move(r).done();
}

FixtureReport bb98() {
    Report r("bb98", "'x<v> | x(y).('y<u> | v(w)): T succeeds where the handshake encoding fails");
    Sides s = both_sides("x!v.0 | x(y).(y!u.0 | v(w).0)");
    chain_is(r, s, 2);
    barbed_exact(r, s);
    Ccs e = translate_E(s.pi.term);
    auto be = explore_bts_ccs(e, DefEnv{});
    r.check(be.graph.complete && longest_chain(be.graph) == 1,
            "E(P): longest reduction chain " + chain_str(be.graph) + ", expected 1");
    GameResult g = check_reduction_bisim(s.bts_pi.graph, be.graph);
    r.check(g.verdict == Verdict::NotBisimilar && g.witness.size() == 2,
            "P and E(P) not reduction bisimilar, witness of length " + std::to_string(g.witness.size()));
    Ccs split = translate_E(parse_pi("y!u.0 | v(w).0", Mode::Im).term);
    r.check(step_gamma_tau(split, DefEnv{}).empty(), "E('y<u> | v(w)) has no tau");
    return std::move(r).done();
}

FixtureReport ccs_barbs(std::size_t k) {
    Report r("ccs-barbs", "A := x0?y.0 + tau.(A[shift x]): infinitely many weak barbs");
    CcsProgram prog = parse_ccs("A := x0?y.0 + tau.(A[shift x])\nA");
    BarbSet got = weak_barb_probe_ccs(prog.term, prog.env, k);
    bool all = true;
    for (std::size_t i = 0; i <= k; ++i)
        all = all && got.contains(Barb{Name::pub("x" + std::to_string(i)), false});
    r.check(all && got.size() == k + 1,
            std::to_string(got.size()) + " distinct weak barbs within " + std::to_string(k) + " reductions");
    return std::move(r).done();
}

FixtureReport pi_pa() {
    Report r("pi-pa", "'x<v> | x(y).(R|0|0) for the four probes R");
    struct Probe {
        const char* r;
        std::size_t chain;
    };
    // longest reduction chains of the π processes themselves
    const Probe probes[] = {{"y!z.0 | v(w).0", 2}, {"0 | v(w).0", 1}, {"y!z.0 | 0", 1}, {"tau.0", 2}};
    for (const auto& p : probes) {
        std::string text = std::string("x!v.0 | x(y).((") + p.r + ") | 0 | 0)";
        Sides s = both_sides(text);
        chain_is(r, s, p.chain);
        GameResult g = check_reduction_bisim(s.bts_pi.graph, s.bts_t.graph);
        r.check(g.verdict == Verdict::Bisimilar, "R = " + std::string(p.r) + ": P and T(P) reduction bisimilar");
    }
    // the purple probe never stops after one step
    Sides purple = both_sides("x!v.0 | x(y).((y!z.0 | v(w).0) | 0 | 0)");
    bool no_stuck = true;
    for (const auto& [label, t] : purple.bts_t.graph.edges[0])
        no_stuck = no_stuck && !purple.bts_t.graph.edges[t].empty();
    r.check(no_stuck, "T(P) for R = 'y<z> | v(w) cannot stop after one reduction");
    PiProgram split = parse_pi("y!z.0 | v(w).0", Mode::Im);
    Translation ts = translate_T(split.term, split.env, Mode::Im);
    r.check(step_gamma_tau(ts.term, ts.env).empty(), "T('y<z> | v(w)) has no tau, only guarded silent steps");
    return std::move(r).done();
}

} // namespace

const std::vector<std::string>& fixture_ids() {
    static const std::vector<std::string> ids{"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7", "bb98", "ccs-barbs", "pi-pa"};
    return ids;
}

FixtureReport run_fixture(const std::string& id, const FixtureOptions& options) {
    static const std::map<std::string, std::function<FixtureReport(const FixtureOptions&)>> table{
        {"ex1", [](const FixtureOptions&) { return ex1(); }},
        {"ex2", [](const FixtureOptions&) { return ex2(); }},
        {"ex3", [](const FixtureOptions&) { return ex3(); }},
        {"ex4", [](const FixtureOptions&) { return ex4(); }},
        {"ex5", [](const FixtureOptions&) { return ex5(); }},
        {"ex6", [](const FixtureOptions&) { return ex6(); }},
        {"ex7", [](const FixtureOptions&) { return ex7(); }},
        {"bb98", [](const FixtureOptions&) { return bb98(); }},
        {"ccs-barbs", [](const FixtureOptions& o) { return ccs_barbs(o.k); }},
        {"pi-pa", [](const FixtureOptions&) { return pi_pa(); }},
    };
    auto it = table.find(id);
    if (it == table.end())
        throw std::invalid_argument("unknown fixture " + id);
    return it->second(options);
}

} // namespace picalc
