#pragma once

// Random terms, transition systems and reference oracles shared by the
// unit and acceptance tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "picalc/ccs_sos.hpp"
#include "picalc/equiv.hpp"
#include "picalc/parse.hpp"
#include "picalc/pi_sos.hpp"

namespace picalc::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct PiGenOptions {
    Mode mode = Mode::Im;
    std::size_t max_size = 10;
    /// Free names drawn from here; binders get fresh-looking names.
    std::vector<Name> free = {Name::pub("a"), Name::pub("b"), Name::pub("c")};
    /// Probability that a prefix (IM) or a subterm (strict) carries a match.
    double match_rate = 0.15;
};

/// Random finite π terms with at most `max_size` constructors.
class PiGen {
public:
    PiGen(Rng& rng, PiGenOptions opts) : rng_(rng), opts_(std::move(opts)) {}

    Pi term() { return gen(opts_.max_size, opts_.free); }

    /// A term over `scope` whose calls to `ident` (taking `arity` arguments)
    /// sit under at least one prefix.
    Pi guarded_body(std::size_t budget, const std::vector<Name>& scope, const std::string& ident, std::size_t arity) {
        rec_ident_ = ident;
        rec_arity_ = arity;
        Pi out = gen(budget, scope);
        rec_ident_.clear();
        return out;
    }

private:
    Name any(const std::vector<Name>& scope) { return scope[pick(rng_, scope.size())]; }

    Name binder(const std::vector<Name>& scope) {
        static const char* pool[] = {"y", "z", "w", "u"};
        // reuse of a name already in scope exercises shadowing
        if (coin(rng_, 0.2))
            return any(scope);
        return Name::pub(pool[pick(rng_, 4)]);
    }

    MatchSeq guard(const std::vector<Name>& scope) {
        MatchSeq m;
        if (opts_.mode == Mode::Im && coin(rng_, opts_.match_rate))
            m = prepend_match(m, any(scope), any(scope));
        return m;
    }

    Pi leaf(const std::vector<Name>& scope, bool guarded) {
        if (guarded && !rec_ident_.empty() && coin(rng_, 0.6)) {
            std::vector<Name> args;
            for (std::size_t i = 0; i < rec_arity_; ++i)
                args.push_back(any(scope));
            return pi::ide(rec_ident_, args);
        }
        return pi::nil();
    }

    Pi gen(std::size_t budget, const std::vector<Name>& scope, bool guarded = false) {
        if (budget <= 1)
            return leaf(scope, guarded);
        std::size_t choice = pick(rng_, opts_.mode == Mode::Strict ? 8 : 7);
        switch (choice) {
        case 0:
            return pi::tau(guard(scope), gen(budget - 1, scope, true));
        case 1:
            return pi::out(guard(scope), any(scope), any(scope), gen(budget - 1, scope, true));
        case 2: {
            Name y = binder(scope);
            std::vector<Name> inner = scope;
            inner.push_back(y);
            return pi::in(guard(scope), any(scope), y, gen(budget - 1, inner, true));
        }
        case 3: {
            Name y = binder(scope);
            std::vector<Name> inner = scope;
            inner.push_back(y);
            return pi::nu(y, gen(budget - 1, inner, guarded));
        }
        case 4:
        case 5: {
            std::size_t l = 1 + pick(rng_, budget - 1);
            Pi a = gen(l, scope, guarded), b = gen(std::max<std::size_t>(1, budget - 1 - l), scope, guarded);
            return choice == 4 ? pi::par(a, b) : pi::sum(a, b);
        }
        case 6:
            return pi::tau(gen(budget - 1, scope, true));
        default:
            return pi::match(any(scope), any(scope), gen(budget - 1, scope, guarded));
        }
    }

    Rng& rng_;
    PiGenOptions opts_;
    std::string rec_ident_;
    std::size_t rec_arity_ = 0;
};

/// A random program around one guarded recursive definition A(a, b).
inline PiProgram random_recursive(Rng& rng, Mode mode = Mode::Im) {
    PiGenOptions opts;
    opts.mode = mode;
    PiGen gen(rng, opts);
    PiProgram prog;
    std::vector<Name> params{Name::pub("a"), Name::pub("b")};
    PiDefinition def{"A", params, gen.guarded_body(3 + pick(rng, 4), params, "A", 2)};
    prog.env.pi[{"A", 2}] = def;
    Pi call = pi::ide("A", {Name::pub("a"), Name::pub(coin(rng) ? "b" : "a")});
    opts.max_size = 4;
    PiGen side(rng, opts);
    prog.term = coin(rng) ? pi::par(call, side.term()) : call;
    return prog;
}

// ---- random labelled transition systems

/// A random LTS with labels a, b, tau; edges only go to existing states.
inline Lts random_lts(Rng& rng, std::size_t max_states = 50) {
    static const char* labels[] = {"a", "b", "tau"};
    Lts g;
    std::size_t n = 1 + pick(rng, max_states);
    double density = 0.5 + 2.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    for (std::size_t s = 0; s < n; ++s) {
        g.keys.push_back("q" + std::to_string(s));
        g.barbs.emplace_back();
        g.depth.push_back(0);
        g.expanded.push_back(true);
        std::vector<std::pair<std::string, std::size_t>> out;
        std::size_t k = std::poisson_distribution<std::size_t>(density)(rng);
        for (std::size_t e = 0; e < k; ++e)
            out.emplace_back(labels[pick(rng, 3)], pick(rng, n));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        g.edges.push_back(std::move(out));
    }
    return g;
}

/// A copy of `g` with states shuffled and some duplicated; bisimilar to `g`
/// by construction.  The root stays at index 0.
inline Lts bisimilar_variant(Rng& rng, const Lts& g) {
    std::size_t n = g.size();
    std::vector<std::size_t> origin(n);  // new state -> old state
    for (std::size_t i = 0; i < n; ++i)
        origin[i] = i;
    std::shuffle(origin.begin() + 1, origin.end(), rng);
    std::size_t copies = pick(rng, n + 1);
    for (std::size_t i = 0; i < copies; ++i)
        origin.push_back(origin[pick(rng, n)]);
    std::map<std::size_t, std::vector<std::size_t>> images;  // old -> new states
    for (std::size_t s = 0; s < origin.size(); ++s)
        images[origin[s]].push_back(s);
    Lts out;
    for (std::size_t s = 0; s < origin.size(); ++s) {
        out.keys.push_back("v" + std::to_string(s));
        out.barbs.push_back(g.barbs[origin[s]]);
        out.depth.push_back(0);
        out.expanded.push_back(true);
        std::vector<std::pair<std::string, std::size_t>> edges;
        for (const auto& [l, t] : g.edges[origin[s]]) {
            const auto& img = images[t];
            edges.emplace_back(l, img[pick(rng, img.size())]);
            if (coin(rng, 0.3))
                edges.emplace_back(l, img[pick(rng, img.size())]);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        out.edges.push_back(std::move(edges));
    }
    return out;
}

/// Naive greatest fixpoint of strong bisimilarity on the disjoint union:
/// start from all pairs and delete violating ones until nothing changes.
inline bool naive_bisimilar(const Lts& g1, const Lts& g2) {
    std::size_t n1 = g1.size(), n = n1 + g2.size();
    auto edges = [&](std::size_t s) -> const auto& { return s < n1 ? g1.edges[s] : g2.edges[s - n1]; };
    auto offset = [&](std::size_t s) { return s < n1 ? 0 : n1; };
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 1));
    auto simulates = [&](std::size_t p, std::size_t q) {
        for (const auto& [l, t] : edges(p)) {
            bool ok = false;
            for (const auto& [l2, t2] : edges(q))
                if (l2 == l && rel[t + offset(p)][t2 + offset(q)]) {
                    ok = true;
                    break;
                }
            if (!ok)
                return false;
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (rel[p][q] && !(simulates(p, q) && simulates(q, p))) {
                    rel[p][q] = rel[q][p] = 0;
                    changed = true;
                }
    }
    return rel[0][n1];
}

// ---- reference CCS τ extraction

/// Names an eager InputSum instantiation needs: every reachable name, closed
/// a few rounds under preimages of the reachable relabellings.
inline NameSet eager_pool(const Ccs& e, const DefEnv& env, int rounds = 3) {
    NameSet pool = reachable_names(e, env);
    auto rels = reachable_relabellings(e, env);
    for (int i = 0; i < rounds; ++i) {
        NameSet next = pool;
        for (const auto& rel : rels)
            for (const auto& n : pool)
                for (const auto& m : rel.preimage(n))
                    next.insert(m);
        if (next == pool)
            break;
        pool = std::move(next);
    }
    return pool;
}

/// τ-successor keys via eager instantiation over `pool`.
inline std::set<std::string> eager_tau_keys(const Ccs& e, const DefEnv& env, const NameSet& pool) {
    std::set<std::string> out;
    for (const auto& t : step_gamma_eager(e, env, pool))
        if (t.action.is_tau())
            out.insert(ccs_key(t.target));
    return out;
}

/// Compares demand-driven and eager τ extraction at every state reachable
/// by τ from `e`, visiting at most `limit` states.  Returns the number of
/// states compared, or -1 on the first disagreement.
inline long compare_tau_extraction(const Ccs& e, const DefEnv& env, std::size_t limit = 50);

inline std::set<std::string> lazy_tau_keys(const Ccs& e, const DefEnv& env) {
    std::set<std::string> out;
    for (const auto& t : step_gamma_tau(e, env))
        out.insert(ccs_key(t));
    return out;
}

inline long compare_tau_extraction(const Ccs& e, const DefEnv& env, std::size_t limit) {
    std::vector<Ccs> todo{e};
    std::set<std::string> seen{ccs_key(e)};
    long compared = 0;
    while (!todo.empty() && static_cast<std::size_t>(compared) < limit) {
        Ccs s = todo.back();
        todo.pop_back();
        if (lazy_tau_keys(s, env) != eager_tau_keys(s, env, eager_pool(s, env)))
            return -1;
        ++compared;
        for (const auto& t : step_gamma_tau(s, env))
            if (seen.insert(ccs_key(t)).second)
                todo.push_back(t);
    }
    return compared;
}

// ---- transition comparison modulo α

using LabelledKeys = std::set<std::pair<std::string, std::string>>;

template <class Pred>
LabelledKeys keys_of(const std::vector<PiTransition>& ts, Pred keep) {
    LabelledKeys out;
    for (const auto& t : ts)
        if (keep(t.action))
            out.emplace(t.action.str(), alpha_key(t.target));
    return out;
}

/// Barbs read off a transition set through the observation function.
inline BarbSet observed_barbs(const std::vector<PiTransition>& ts) {
    BarbSet out;
    for (const auto& t : ts)
        if (auto b = t.action.observe())
            out.insert(*b);
    return out;
}

} // namespace picalc::testing

namespace picalc::testing {

/// Replays a distinguishing play through the two graphs: every attacker
/// move and every recorded defender answer must be an edge.
inline bool witness_replays(const TransitionGraph& g1, const TransitionGraph& g2, const GameResult& r) {
    auto index = [](const TransitionGraph& g) {
        std::map<std::string, std::size_t> out;
        for (std::size_t s = 0; s < g.size(); ++s)
            out.emplace(g.keys[s], s);
        return out;
    };
    auto i1 = index(g1), i2 = index(g2);
    auto edge = [](const TransitionGraph& g, const std::map<std::string, std::size_t>& idx, const std::string& from,
                   const std::string& label, const std::string& to) {
        auto f = idx.find(from), t = idx.find(to);
        if (f == idx.end() || t == idx.end())
            return false;
        for (const auto& [l, s] : g.edges[f->second])
            if (l == label && s == t->second)
                return true;
        return false;
    };
    std::string cur[2] = {g1.keys[0], g2.keys[0]};
    for (const auto& st : r.witness) {
        int a = st.side, d = 1 - st.side;
        const auto& ga = a == 0 ? g1 : g2;
        const auto& gd = d == 0 ? g1 : g2;
        if (st.from != cur[a] || !edge(ga, a == 0 ? i1 : i2, st.from, st.label, st.to))
            return false;
        if (st.response && !edge(gd, d == 0 ? i1 : i2, cur[d], st.label, *st.response))
            return false;
        cur[a] = st.to;
        if (st.response)
            cur[d] = *st.response;
    }
    return true;
}

/// The partition from bisimilarity_classes is itself a barbed bisimulation.
inline bool classes_are_bisimulation(const TransitionGraph& g1, const TransitionGraph& g2, Observation obs) {
    auto cls = bisimilarity_classes(g1, g2, obs);
    std::size_t n1 = g1.size();
    auto state = [&](std::size_t s) -> std::pair<const TransitionGraph*, std::size_t> {
        return s < n1 ? std::make_pair(&g1, s) : std::make_pair(&g2, s - n1);
    };
    auto off = [&](const TransitionGraph* g) { return g == &g1 ? 0 : n1; };
    for (std::size_t p = 0; p < cls.size(); ++p)
        for (std::size_t q = 0; q < cls.size(); ++q) {
            if (cls[p] != cls[q])
                continue;
            auto [gp, sp] = state(p);
            auto [gq, sq] = state(q);
            if (obs == Observation::Barbed && gp->barbs[sp] != gq->barbs[sq])
                return false;
            for (const auto& [l, t] : gp->edges[sp]) {
                bool ok = false;
                for (const auto& [l2, t2] : gq->edges[sq])
                    ok = ok || (l2 == l && cls[t + off(gp)] == cls[t2 + off(gq)]);
                if (!ok)
                    return false;
            }
        }
    return true;
}

} // namespace picalc::testing
