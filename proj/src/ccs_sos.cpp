#include "picalc/ccs_sos.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "picalc/errors.hpp"
#include "picalc/pi_sos.hpp"

namespace picalc {

std::optional<Action> gamma(const Action& a, const Action& b) {
    if (a.kind() == ActionKind::FreeIn && b.kind() == ActionKind::FreeOut)
        return gamma(b, a);
    if (a.kind() != ActionKind::FreeOut || b.kind() != ActionKind::FreeIn || a.object() != b.object())
        return std::nullopt;
    return Action::silent(prepend_match(a.matches().then(b.matches()), a.subject(), b.subject()));
}

std::optional<Action> handshake(const Action& a, const Action& b) {
    if (a.kind() == ActionKind::FreeIn && b.kind() == ActionKind::FreeOut)
        return handshake(b, a);
    if (a.kind() != ActionKind::FreeOut || b.kind() != ActionKind::FreeIn)
        return std::nullopt;
    if (!a.matches().empty() || !b.matches().empty() || a.subject() != b.subject() || a.object() != b.object())
        return std::nullopt;
    return Action::silent();
}

namespace {

// A derivable transition, or for inputs of infinite sums a family of them
// indexed by the observed object: `action` then carries no object and
// `family(w)` lists the targets reached on receiving w.
struct Move {
    Action action;
    Ccs target;
    std::function<std::vector<Ccs>(const Name&)> family;

    bool is_family() const { return static_cast<bool>(family); }
};

Ccs instantiate(const CcsNode& sum, const Name& w) {
    if (sum.inst == Instantiation::Spare)
        return ccs::relabel(sum.child(), Relabelling::subs({w}, {sum.y}));
    return ccs::relabel(sum.child(), Relabelling::finite_map({{sum.y, w}}));
}

bool accepts(const CcsNode& sum, const Name& w) { return !sum.public_only || w.is_plain(); }

class Engine {
public:
    Engine(const DefEnv& env, const NameSet* eager_pool) : env_(env), eager_(eager_pool) {}

    std::vector<Move> moves(const Ccs& e, int depth = 0) {
        std::vector<Move> out;
        using K = CcsNode::Kind;
        switch (e->kind) {
        case K::Nil:
            break;
        case K::Prefix:
            out.push_back({e->action, e->child(), {}});
            break;
        case K::Sum:
            for (const auto& c : e->children) {
                auto ms = moves(c, depth);
                out.insert(out.end(), std::make_move_iterator(ms.begin()), std::make_move_iterator(ms.end()));
            }
            break;
        case K::InputSum:
            input_sum(e, out);
            break;
        case K::Par:
            parallel(e, out, depth);
            break;
        case K::Restrict:
            for (auto& m : moves(e->child(), depth)) {
                if (!m.action.is_silent() && e->restricted.contains(m.action.subject()))
                    continue;
                NameSet l = e->restricted;
                out.push_back(wrap(std::move(m), [l](const Ccs& t) { return ccs::restrict(t, l); }));
            }
            break;
        case K::Relabel:
            relabel(e, out, depth);
            break;
        case K::Trigger:
            for (auto& m : moves(e->child(), depth)) {
                m.action = m.action.with_matches(prepend_match(m.action.matches(), e->x, e->y));
                out.push_back(std::move(m));
            }
            break;
        case K::Ide:
            if (depth >= kUnfoldGuard)
                throw SemanticsError("unguarded recursion through " + e->ident + " exceeds the unfolding guard of " +
                                     std::to_string(kUnfoldGuard));
            out = moves(env_.ccs_def(e->ident), depth + 1);
            break;
        }
        return out;
    }

private:
    static Move wrap(Move m, std::function<Ccs(const Ccs&)> f) {
        if (!m.is_family())
            return {std::move(m.action), f(m.target), {}};
        auto inner = std::move(m.family);
        return {std::move(m.action), nullptr, [inner, f](const Name& w) {
                    std::vector<Ccs> out;
                    for (const auto& t : inner(w))
                        out.push_back(f(t));
                    return out;
                }};
    }

    void input_sum(const Ccs& e, std::vector<Move>& out) const {
        if (eager_) {
            for (const auto& w : *eager_)
                if (accepts(*e, w))
                    out.push_back({Action::free_in(e->m, e->x, w), instantiate(*e, w), {}});
            return;
        }
        Ccs keep = e;
        out.push_back({Action::free_in(e->m, e->x, std::nullopt), nullptr, [keep](const Name& w) {
                           if (!accepts(*keep, w))
                               return std::vector<Ccs>{};
                           return std::vector<Ccs>{instantiate(*keep, w)};
                       }});
    }

    void relabel(const Ccs& e, std::vector<Move>& out, int depth) {
        const Relabelling& rel = e->rel;
        for (auto& m : moves(e->child(), depth)) {
            Action a = apply_to_action(rel, m.action);
            if (!m.is_family()) {
                out.push_back({std::move(a), ccs::relabel(m.target, rel), {}});
                continue;
            }
            auto inner = std::move(m.family);
            out.push_back({std::move(a), nullptr, [inner, rel](const Name& w) {
                               std::vector<Ccs> targets;
                               for (const auto& u : rel.preimage(w))
                                   for (const auto& t : inner(u))
                                       targets.push_back(ccs::relabel(t, rel));
                               return targets;
                           }});
        }
    }

    void parallel(const Ccs& e, std::vector<Move>& out, int depth) {
        const Ccs& E = e->children[0];
        const Ccs& F = e->children[1];
        bool g = e->gamma;
        auto left = moves(E, depth);
        auto right = moves(F, depth);
        for (const auto& m : left)
            out.push_back(wrap(m, [F, g](const Ccs& t) { return ccs::par(t, F, g); }));
        for (const auto& m : right)
            out.push_back(wrap(m, [E, g](const Ccs& t) { return ccs::par(E, t, g); }));

        auto sync = [&](const Move& o, const Move& i, bool out_on_left) {
            if (o.action.kind() != ActionKind::FreeOut || o.is_family() || !i.action.is_input())
                return;
            const std::optional<Name>& obj = o.action.object();
            std::vector<Ccs> received;
            Action in_label = i.action;
            if (i.is_family()) {
                if (!obj)
                    return;
                received = i.family(*obj);
                in_label = i.action.with_object(obj);
            } else {
                received.push_back(i.target);
            }
            std::optional<Action> label = g ? gamma(o.action, in_label) : handshake(o.action, in_label);
            if (!label)
                return;
            for (const auto& r : received)
                out.push_back({*label, out_on_left ? ccs::par(o.target, r, g) : ccs::par(r, o.target, g), {}});
        };
        for (const auto& l : left)
            for (const auto& r : right) {
                sync(l, r, true);
                sync(r, l, false);
            }
    }

    const DefEnv& env_;
    const NameSet* eager_;
};

struct Collected {
    std::map<std::pair<std::string, std::string>, CcsTransition> by_key;

    void add(Action a, Ccs target) {
        auto key = std::make_pair(a.str(), ccs_key(target));
        by_key.try_emplace(std::move(key), CcsTransition{std::move(a), std::move(target)});
    }

    std::vector<CcsTransition> list() && {
        std::vector<CcsTransition> out;
        out.reserve(by_key.size());
        for (auto& [k, t] : by_key)
            out.push_back(std::move(t));
        return out;
    }
};

void collect_offers(const Ccs& e, const DefEnv& env, int depth, std::vector<Action>& out) {
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Nil:
        return;
    case K::Prefix:
        if (!e->action.is_silent())
            out.push_back(e->action);
        return;
    case K::InputSum:
        out.push_back(Action::free_in(e->m, e->x, std::nullopt));
        return;
    case K::Sum:
    case K::Par:
        for (const auto& c : e->children)
            collect_offers(c, env, depth, out);
        return;
    case K::Restrict: {
        std::vector<Action> inner;
        collect_offers(e->child(), env, depth, inner);
        for (auto& a : inner)
            if (!e->restricted.contains(a.subject()))
                out.push_back(std::move(a));
        return;
    }
    case K::Relabel: {
        std::vector<Action> inner;
        collect_offers(e->child(), env, depth, inner);
        for (const auto& a : inner) {
            Action b = apply_to_action(e->rel, a);
            if (!b.is_silent())
                out.push_back(std::move(b));
        }
        return;
    }
    case K::Trigger: {
        std::vector<Action> inner;
        collect_offers(e->child(), env, depth, inner);
        for (const auto& a : inner)
            out.push_back(a.with_matches(prepend_match(a.matches(), e->x, e->y)));
        return;
    }
    case K::Ide:
        if (depth >= kUnfoldGuard)
            throw SemanticsError("unguarded recursion through " + e->ident + " exceeds the unfolding guard of " +
                                 std::to_string(kUnfoldGuard));
        collect_offers(env.ccs_def(e->ident), env, depth + 1, out);
        return;
    }
}

void visit_reachable(const Ccs& e, const DefEnv& env, std::set<std::string>& idents,
                     const std::function<void(const Ccs&)>& f) {
    f(e);
    if (e->kind == CcsNode::Kind::Ide && idents.insert(e->ident).second)
        visit_reachable(env.ccs_def(e->ident), env, idents, f);
    for (const auto& c : e->children)
        visit_reachable(c, env, idents, f);
}

} // namespace

std::vector<CcsTransition> step_gamma_visible(const Ccs& e, const DefEnv& env, const NameSet& pool) {
    Engine engine(env, nullptr);
    Collected c;
    for (const auto& m : engine.moves(e)) {
        if (!m.is_family()) {
            c.add(m.action, m.target);
            continue;
        }
        for (const auto& w : pool)
            for (const auto& t : m.family(w))
                c.add(m.action.with_object(w), t);
    }
    return std::move(c).list();
}

std::vector<CcsTransition> step_ccs(const Ccs& e, const DefEnv& env, const NameSet& pool) {
    return step_gamma_visible(e, env, pool);
}

std::vector<Ccs> step_gamma_tau(const Ccs& e, const DefEnv& env) {
    Engine engine(env, nullptr);
    Collected c;
    for (const auto& m : engine.moves(e))
        if (m.action.is_tau())
            c.add(m.action, m.target);
    std::vector<Ccs> out;
    for (auto& t : std::move(c).list())
        out.push_back(std::move(t.target));
    return out;
}

std::vector<CcsTransition> step_gamma_silent(const Ccs& e, const DefEnv& env) {
    Engine engine(env, nullptr);
    Collected c;
    for (const auto& m : engine.moves(e))
        if (m.action.is_silent())
            c.add(m.action, m.target);
    return std::move(c).list();
}

std::vector<CcsTransition> step_gamma_eager(const Ccs& e, const DefEnv& env, const NameSet& pool) {
    Engine engine(env, &pool);
    Collected c;
    for (const auto& m : engine.moves(e))
        c.add(m.action, m.target);
    return std::move(c).list();
}

BarbSet barbs_ccs(const Ccs& e, const DefEnv& env) {
    std::vector<Action> offers;
    collect_offers(e, env, 0, offers);
    BarbSet out;
    for (const auto& a : offers)
        if (auto b = a.observe())
            out.insert(*b);
    return out;
}

NameSet reachable_names(const Ccs& e, const DefEnv& env) {
    NameSet out;
    std::set<std::string> idents;
    visit_reachable(e, env, idents, [&](const Ccs& n) {
        NameSet local = all_names(n);
        out.insert(local.begin(), local.end());
    });
    return out;
}

std::vector<Relabelling> reachable_relabellings(const Ccs& e, const DefEnv& env) {
    std::vector<Relabelling> out;
    std::set<std::string> idents;
    visit_reachable(e, env, idents, [&](const Ccs& n) {
        if (n->kind == CcsNode::Kind::Relabel)
            out.push_back(n->rel);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace picalc
