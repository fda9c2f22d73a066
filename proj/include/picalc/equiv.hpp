#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "picalc/ccs_sos.hpp"
#include "picalc/pi_sos.hpp"

namespace picalc {

/// An explored transition system.  A BTS has only `tau` edges and carries
/// barbs; an LTS carries arbitrary labels and the pool its inputs used.
/// State 0 is the root.
struct TransitionGraph {
    static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

    std::vector<std::string> keys;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> edges;
    std::vector<BarbSet> barbs;
    std::vector<std::size_t> depth;  // BFS distance from the root
    std::vector<bool> expanded;
    std::optional<NameSet> pool;
    /// Every state closer to the root than this was expanded.
    std::size_t full_depth = kUnbounded;
    bool complete = true;

    std::size_t size() const { return keys.size(); }
    std::size_t edge_count() const;
};

using Bts = TransitionGraph;
using Lts = TransitionGraph;

struct ExploreLimits {
    std::size_t max_states = 20000;
    std::size_t max_depth = 64;

    /// Defaults, with PICALC_MAX_STATES overriding the state bound.
    static ExploreLimits from_env();
};

template <class Term>
struct Exploration {
    TransitionGraph graph;
    std::vector<Term> terms;
};

/// Breadth-first exploration with deduplication by `key`.
///
/// `step(t)` yields (label, successor) pairs, `barbs(t)` the barbs of t (only
/// called when `with_barbs`).  A state left unexpanded because of either
/// bound makes the result incomplete.
template <class Term, class Step, class Barbs, class Key>
Exploration<Term> explore(const Term& root, Step step, Barbs barbs, Key key, const ExploreLimits& limits,
                          bool with_barbs) {
    Exploration<Term> ex;
    TransitionGraph& g = ex.graph;
    std::unordered_map<std::string, std::size_t> index;
    auto add = [&](const Term& t, std::string k, std::size_t d) {
        index.emplace(k, g.keys.size());
        g.keys.push_back(std::move(k));
        g.edges.emplace_back();
        g.barbs.push_back(with_barbs ? barbs(t) : BarbSet{});
        g.depth.push_back(d);
        g.expanded.push_back(false);
        ex.terms.push_back(t);
    };
    add(root, key(root), 0);
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (g.depth[s] >= limits.max_depth)
            continue;
        Term t = ex.terms[s];
        std::vector<std::pair<std::string, std::size_t>> out;
        bool overflow = false;
        for (auto& [label, succ] : step(t)) {
            std::string k = key(succ);
            auto it = index.find(k);
            if (it == index.end()) {
                if (g.size() >= limits.max_states) {
                    overflow = true;
                    break;
                }
                add(succ, k, g.depth[s] + 1);
                it = index.find(k);
            }
            out.emplace_back(std::move(label), it->second);
        }
        if (overflow)
            continue;
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        g.edges[s] = std::move(out);
        g.expanded[s] = true;
    }
    for (std::size_t s = 0; s < g.size(); ++s)
        if (!g.expanded[s]) {
            g.complete = false;
            g.full_depth = std::min(g.full_depth, g.depth[s]);
        }
    return ex;
}

// ---- explorations of the two calculi

Exploration<Pi> explore_bts_pi(const Pi& p, const DefEnv& env, const ExploreLimits& limits = ExploreLimits::from_env());
Exploration<Ccs> explore_bts_ccs(const Ccs& e, const DefEnv& env,
                                 const ExploreLimits& limits = ExploreLimits::from_env());
Exploration<Pi> explore_lts_pi(const Pi& p, const DefEnv& env, PiSemantics sem, const NameSet& pool,
                               const ExploreLimits& limits = ExploreLimits::from_env());
Exploration<Ccs> explore_lts_ccs(const Ccs& e, const DefEnv& env, const NameSet& pool,
                                 const ExploreLimits& limits = ExploreLimits::from_env());

// ---- equivalence checking

enum class Verdict : unsigned char { Bisimilar, BisimilarToDepth, NotBisimilar };

/// One attacker move of a distinguishing play: `side` (0 left, 1 right)
/// moves `from -> to` with `label`; `response` is the defender's chosen
/// answer, absent when it has none.
struct WitnessStep {
    int side = 0;
    std::string label;
    std::string from;
    std::string to;
    std::optional<std::string> response;
};

struct GameResult {
    Verdict verdict = Verdict::Bisimilar;
    /// Exact verdicts: number of refinement rounds; bounded: the depth.
    std::size_t depth = 0;
    std::size_t states = 0;
    std::vector<WitnessStep> witness;
    /// Why the final pair of the witness differs.
    std::string reason;

    bool exact() const { return verdict == Verdict::Bisimilar; }
    bool holds() const { return verdict != Verdict::NotBisimilar; }
    std::string verdict_str() const;
};

/// Strong barbed bisimilarity: τ-reductions matched, barbs preserved.
GameResult check_barbed_bisim(const Bts& b1, const Bts& b2);
/// Strong reduction bisimilarity: τ-reductions matched, barbs ignored.
GameResult check_reduction_bisim(const Bts& b1, const Bts& b2);
/// Strong bisimilarity of finite LTSs explored with the same pool.  Throws
/// std::invalid_argument when the pools differ.
GameResult check_strong_bisim(const Lts& l1, const Lts& l2);

enum class Observation : unsigned char { Barbed, Reduction, Labelled };

/// Class of every state of the disjoint union (left states first) in the
/// coarsest stable partition.  Meaningful for complete graphs.
std::vector<int> bisimilarity_classes(const TransitionGraph& g1, const TransitionGraph& g2, Observation obs);

/// Length of the longest path from the root; nullopt when a cycle is
/// reachable or the graph is incomplete.
std::optional<std::size_t> longest_chain(const TransitionGraph& g);

/// Union of the barbs of every state reachable by at most k reductions.
BarbSet weak_barb_probe_ccs(const Ccs& e, const DefEnv& env, std::size_t k);
BarbSet weak_barb_probe_pi(const Pi& p, const DefEnv& env, std::size_t k);

/// GraphViz rendering with stable node order; barbs annotate nodes and
/// reductions are drawn bold.
std::string to_dot(const TransitionGraph& g, const std::string& name = "lts");

} // namespace picalc
