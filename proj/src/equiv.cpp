#include "picalc/equiv.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace picalc {

std::size_t TransitionGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges)
        n += e.size();
    return n;
}

ExploreLimits ExploreLimits::from_env() {
    ExploreLimits limits;
    if (const char* v = std::getenv("PICALC_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0' && n > 0)
            limits.max_states = static_cast<std::size_t>(n);
    }
    return limits;
}

Exploration<Pi> explore_bts_pi(const Pi& p, const DefEnv& env, const ExploreLimits& limits) {
    return explore(
        p,
        [&](const Pi& t) {
            std::vector<std::pair<std::string, Pi>> out;
            for (auto& s : step_early_tau(t, env))
                out.emplace_back("tau", std::move(s));
            return out;
        },
        [&](const Pi& t) { return barbs_pi(t, env); }, [](const Pi& t) { return "pi:" + alpha_key(t); }, limits,
        true);
}

Exploration<Ccs> explore_bts_ccs(const Ccs& e, const DefEnv& env, const ExploreLimits& limits) {
    return explore(
        e,
        [&](const Ccs& t) {
            std::vector<std::pair<std::string, Ccs>> out;
            for (auto& s : step_gamma_tau(t, env))
                out.emplace_back("tau", std::move(s));
            return out;
        },
        [&](const Ccs& t) { return barbs_ccs(t, env); }, [](const Ccs& t) { return "ccs:" + ccs_key(t); }, limits,
        true);
}

Exploration<Pi> explore_lts_pi(const Pi& p, const DefEnv& env, PiSemantics sem, const NameSet& pool,
                               const ExploreLimits& limits) {
    auto ex = explore(
        p,
        [&](const Pi& t) {
            std::vector<std::pair<std::string, Pi>> out;
            for (auto& tr : step_pi(t, env, sem, pool))
                out.emplace_back(tr.action.str(), std::move(tr.target));
            return out;
        },
        [&](const Pi& t) { return barbs_pi(t, env); }, [](const Pi& t) { return "pi:" + alpha_key(t); }, limits,
        true);
    ex.graph.pool = pool;
    return ex;
}

Exploration<Ccs> explore_lts_ccs(const Ccs& e, const DefEnv& env, const NameSet& pool, const ExploreLimits& limits) {
    auto ex = explore(
        e,
        [&](const Ccs& t) {
            std::vector<std::pair<std::string, Ccs>> out;
            for (auto& tr : step_gamma_visible(t, env, pool))
                out.emplace_back(tr.action.str(), std::move(tr.target));
            return out;
        },
        [&](const Ccs& t) { return barbs_ccs(t, env); }, [](const Ccs& t) { return "ccs:" + ccs_key(t); }, limits,
        true);
    ex.graph.pool = pool;
    return ex;
}

std::string GameResult::verdict_str() const {
    switch (verdict) {
    case Verdict::Bisimilar:
        return "bisimilar";
    case Verdict::BisimilarToDepth:
        return "bisimilar-to-depth";
    case Verdict::NotBisimilar:
        return "not-bisimilar";
    }
    return {};
}

namespace {

std::string barbs_str(const BarbSet& b) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : b) {
        out += (first ? "" : ",") + x.str();
        first = false;
    }
    return out + "}";
}

// Stratified signature refinement over the disjoint union of two graphs.
// Level j relates states that cannot be told apart within j moves.
class Refinement {
public:
    Refinement(const TransitionGraph& g1, const TransitionGraph& g2, Observation obs)
        : g_{&g1, &g2}, offset_(g1.size()), obs_(obs) {
        std::map<std::string, int> ids;
        std::vector<int> level0(total());
        for (std::size_t s = 0; s < total(); ++s) {
            std::string c = obs_ == Observation::Barbed ? barbs_str(barbs(s)) : std::string();
            level0[s] = ids.emplace(c, static_cast<int>(ids.size())).first->second;
        }
        levels_.push_back(std::move(level0));
        classes_.push_back(ids.size());
    }

    std::size_t total() const { return offset_ + g_[1]->size(); }
    std::size_t root(int side) const { return side == 0 ? 0 : offset_; }
    const TransitionGraph& graph_of(std::size_t s) const { return *g_[s < offset_ ? 0 : 1]; }
    std::size_t local(std::size_t s) const { return s < offset_ ? s : s - offset_; }
    std::size_t global(std::size_t s, int side) const { return side == 0 ? s : s + offset_; }
    const BarbSet& barbs(std::size_t s) const { return graph_of(s).barbs[local(s)]; }
    bool expanded(std::size_t s) const { return graph_of(s).expanded[local(s)]; }
    const std::string& key(std::size_t s) const { return graph_of(s).keys[local(s)]; }

    std::vector<std::pair<std::string, std::size_t>> moves(std::size_t s) const {
        std::vector<std::pair<std::string, std::size_t>> out;
        int side = s < offset_ ? 0 : 1;
        for (const auto& [label, t] : graph_of(s).edges[local(s)])
            out.emplace_back(label, global(t, side));
        return out;
    }

    /// Refines once; false when the partition did not change.
    bool step() {
        const std::vector<int>& prev = levels_.back();
        std::map<std::vector<long>, int> ids;
        std::vector<int> next(total());
        for (std::size_t s = 0; s < total(); ++s) {
            std::vector<long> sig{prev[s], expanded(s) ? 1 : 0};
            std::set<std::pair<std::string, int>> succ;
            for (const auto& [label, t] : moves(s))
                succ.emplace(obs_ == Observation::Labelled ? label : std::string(), prev[t]);
            for (const auto& [label, c] : succ) {
                sig.push_back(label_id(label));
                sig.push_back(c);
            }
            next[s] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
        }
        bool changed = ids.size() != classes_.back();
        levels_.push_back(std::move(next));
        classes_.push_back(ids.size());
        return changed;
    }

    std::size_t level() const { return levels_.size() - 1; }
    const std::vector<int>& colors(std::size_t j) const { return levels_[j]; }
    const std::vector<int>& final_colors() const { return levels_.back(); }

    bool roots_differ(std::size_t j) const { return levels_[j][root(0)] != levels_[j][root(1)]; }

    std::size_t first_split(std::size_t a, std::size_t b) const {
        for (std::size_t j = 0; j < levels_.size(); ++j)
            if (levels_[j][a] != levels_[j][b])
                return j;
        return levels_.size();
    }

    void witness(GameResult& r, std::size_t level) const {
        std::size_t a = root(0), b = root(1);
        for (;;) {
            if (level == 0) {
                r.reason = "barbs differ: " + barbs_str(barbs(a)) + " vs " + barbs_str(barbs(b));
                return;
            }
            const std::vector<int>& below = levels_[level - 1];
            bool found = false;
            for (int side = 0; side < 2 && !found; ++side) {
                std::size_t att = side == 0 ? a : b;
                std::size_t def = side == 0 ? b : a;
                for (const auto& [label, t] : moves(att)) {
                    std::optional<std::size_t> answer;
                    bool matched = false;
                    for (const auto& [l2, u] : moves(def)) {
                        if (obs_ == Observation::Labelled && l2 != label)
                            continue;
                        if (below[u] == below[t]) {
                            matched = true;
                            break;
                        }
                        if (!answer)
                            answer = u;
                    }
                    if (matched)
                        continue;
                    found = true;
                    WitnessStep st{side, label, key(att), key(t), std::nullopt};
                    if (answer)
                        st.response = key(*answer);
                    r.witness.push_back(std::move(st));
                    if (!answer) {
                        r.reason = (side == 0 ? "right" : "left") + std::string(" cannot answer ") + label;
                        return;
                    }
                    std::size_t na = side == 0 ? t : *answer;
                    std::size_t nb = side == 0 ? *answer : t;
                    a = na;
                    b = nb;
                    level = first_split(a, b);
                    break;
                }
            }
            if (!found) {
                // the split is due to the expansion marker alone
                r.reason = "exploration bound reached";
                return;
            }
        }
    }

private:
    long label_id(const std::string& label) {
        return label_ids_.emplace(label, static_cast<long>(label_ids_.size())).first->second;
    }

    const TransitionGraph* g_[2];
    std::size_t offset_;
    Observation obs_;
    std::vector<std::vector<int>> levels_;
    std::vector<std::size_t> classes_;
    std::map<std::string, long> label_ids_;
};

GameResult check(const TransitionGraph& g1, const TransitionGraph& g2, Observation obs) {
    Refinement ref(g1, g2, obs);
    GameResult r;
    r.states = g1.size() + g2.size();
    bool exact = g1.complete && g2.complete;
    std::size_t bound = exact ? TransitionGraph::kUnbounded : std::min(g1.full_depth, g2.full_depth);
    auto fail_at = [&](std::size_t j) {
        r.verdict = Verdict::NotBisimilar;
        r.depth = j;
        ref.witness(r, j);
        return r;
    };
    if (ref.roots_differ(0))
        return fail_at(0);
    while (ref.level() < bound) {
        bool changed = ref.step();
        if (ref.roots_differ(ref.level()))
            return fail_at(ref.level());
        if (!changed && exact)
            break;
        if (!changed) {
            // stable on the explored part: deeper levels repeat this one
            break;
        }
    }
    if (exact) {
        r.verdict = Verdict::Bisimilar;
        r.depth = ref.level();
    } else {
        r.verdict = Verdict::BisimilarToDepth;
        r.depth = bound;
    }
    return r;
}

} // namespace

GameResult check_barbed_bisim(const Bts& b1, const Bts& b2) { return check(b1, b2, Observation::Barbed); }

GameResult check_reduction_bisim(const Bts& b1, const Bts& b2) { return check(b1, b2, Observation::Reduction); }

GameResult check_strong_bisim(const Lts& l1, const Lts& l2) {
    if (l1.pool != l2.pool)
        throw std::invalid_argument("strong bisimilarity needs both transition systems explored over the same pool");
    return check(l1, l2, Observation::Labelled);
}

std::vector<int> bisimilarity_classes(const TransitionGraph& g1, const TransitionGraph& g2, Observation obs) {
    Refinement ref(g1, g2, obs);
    while (ref.step()) {
    }
    return ref.final_colors();
}

std::optional<std::size_t> longest_chain(const TransitionGraph& g) {
    if (!g.complete)
        return std::nullopt;
    // 0 unvisited, 1 on the stack, 2 done
    std::vector<int> mark(g.size(), 0);
    std::vector<std::size_t> best(g.size(), 0);
    bool cycle = false;
    std::function<void(std::size_t)> visit = [&](std::size_t s) {
        mark[s] = 1;
        for (const auto& [label, t] : g.edges[s]) {
            if (mark[t] == 1)
                cycle = true;
            else if (mark[t] == 0)
                visit(t);
            if (cycle)
                return;
            best[s] = std::max(best[s], best[t] + 1);
        }
        mark[s] = 2;
    };
    visit(0);
    if (cycle)
        return std::nullopt;
    return best[0];
}

namespace {

template <class Term, class Step, class Barbs, class Key>
BarbSet weak_barbs(const Term& root, Step step, Barbs barbs, Key key, std::size_t k) {
    BarbSet out;
    std::set<std::string> seen{key(root)};
    std::vector<Term> layer{root};
    for (std::size_t d = 0;; ++d) {
        std::vector<Term> next;
        for (const auto& t : layer) {
            BarbSet b = barbs(t);
            out.insert(b.begin(), b.end());
            if (d == k)
                continue;
            for (auto& s : step(t))
                if (seen.insert(key(s)).second)
                    next.push_back(std::move(s));
        }
        if (d == k || next.empty())
            return out;
        layer = std::move(next);
    }
}

} // namespace

BarbSet weak_barb_probe_ccs(const Ccs& e, const DefEnv& env, std::size_t k) {
    return weak_barbs(
        e, [&](const Ccs& t) { return step_gamma_tau(t, env); }, [&](const Ccs& t) { return barbs_ccs(t, env); },
        [](const Ccs& t) { return ccs_key(t); }, k);
}

BarbSet weak_barb_probe_pi(const Pi& p, const DefEnv& env, std::size_t k) {
    return weak_barbs(
        p, [&](const Pi& t) { return step_early_tau(t, env); }, [&](const Pi& t) { return barbs_pi(t, env); },
        [](const Pi& t) { return alpha_key(t); }, k);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string to_dot(const TransitionGraph& g, const std::string& name) {
    std::string out = "digraph \"" + dot_escape(name) + "\" {\n  node [shape=box, fontname=monospace];\n";
    for (std::size_t s = 0; s < g.size(); ++s) {
        out += "  s" + std::to_string(s) + " [label=\"" + dot_escape(g.keys[s]);
        if (!g.barbs[s].empty())
            out += "\\n" + dot_escape(barbs_str(g.barbs[s]));
        out += "\"";
        if (s == 0)
            out += ", peripheries=2";
        if (!g.expanded[s])
            out += ", style=dashed";
        out += "];\n";
    }
    for (std::size_t s = 0; s < g.size(); ++s)
        for (const auto& [label, t] : g.edges[s]) {
            out += "  s" + std::to_string(s) + " -> s" + std::to_string(t) + " [label=\"" + dot_escape(label) + "\"";
            if (label == "tau")
                out += ", style=bold";
            out += "];\n";
        }
    return out + "}\n";
}

} // namespace picalc
