#include "picalc/pi_sos.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "picalc/errors.hpp"

namespace picalc {

namespace {

// A derivable transition.  Early free inputs stay unresolved as a family
// indexed by the received name: `action` is the input with no object.
struct Move {
    Action action;
    Pi target;
    std::function<Pi(const Name&)> family;

    bool is_family() const { return static_cast<bool>(family); }
};

NameSet join(NameSet a, const NameSet& b) {
    a.insert(b.begin(), b.end());
    return a;
}

Pi rename(const Pi& p, const Name& from, const Name& to) {
    if (from == to)
        return p;
    return substitute(p, Subst{{from, to}});
}

// Replaces the bound object of `m` by a name outside `avoid` and fn(target).
Move rename_bound(const Move& m, const NameSet& avoid) {
    const Name& b = *m.action.object();
    NameSet all = join(avoid, free_names(m.target));
    all.erase(b);
    Name fresh = fresh_name(join(all, {b}));
    return Move{m.action.with_object(fresh), rename(m.target, b, fresh), {}};
}

class Engine {
public:
    Engine(const DefEnv& env, bool early, bool symbolic) : env_(env), early_(early), symbolic_(symbolic) {}

    std::vector<Move> moves(const Pi& p, int depth = 0) {
        std::vector<Move> out;
        using K = PiNode::Kind;
        switch (p->kind) {
        case K::Nil:
            break;
        case K::Prefix:
            prefix(p, out);
            break;
        case K::Sum: {
            out = moves(p->left, depth);
            auto r = moves(p->right, depth);
            out.insert(out.end(), r.begin(), r.end());
            break;
        }
        case K::Match:
            if (p->x == p->y) {
                out = moves(p->left, depth);
            } else if (symbolic_) {
                for (auto& m : moves(p->left, depth)) {
                    m.action = m.action.with_matches(prepend_match(m.action.matches(), p->x, p->y));
                    out.push_back(std::move(m));
                }
            }
            break;
        case K::Ide: {
            if (depth >= kUnfoldGuard)
                throw SemanticsError("unguarded recursion through " + p->ident + " exceeds the unfolding guard of " +
                                     std::to_string(kUnfoldGuard));
            out = moves(unfold(p), depth + 1);
            break;
        }
        case K::Nu:
            restrict(p, moves(p->left, depth), out);
            break;
        case K::Par:
            parallel(p, moves(p->left, depth), moves(p->right, depth), out);
            break;
        }
        return out;
    }

    Pi unfold(const Pi& p) const {
        const PiDefinition& def = env_.pi_def(p->ident, p->args.size());
        Subst sigma;
        for (std::size_t i = 0; i < def.params.size(); ++i)
            sigma[def.params[i]] = p->args[i];
        return substitute(def.body, sigma);
    }

private:
    void prefix(const Pi& p, std::vector<Move>& out) const {
        if (!symbolic_ && !p->m.empty())
            return;
        switch (p->prefix) {
        case PrefixKind::Tau:
            out.push_back({Action::silent(p->m), p->left, {}});
            break;
        case PrefixKind::Out:
            out.push_back({Action::free_out(p->m, p->x, p->y), p->left, {}});
            break;
        case PrefixKind::In:
            if (early_) {
                Pi body = p->left;
                Name y = p->y;
                out.push_back({Action::free_in(p->m, p->x, std::nullopt), nullptr,
                               [body, y](const Name& w) { return rename(body, y, w); }});
            } else {
                out.push_back({Action::bound_in(p->m, p->x, p->y), p->left, {}});
            }
            break;
        }
    }

    void restrict(const Pi& p, std::vector<Move> inner, std::vector<Move>& out) const {
        const Name& y = p->y;
        const Pi& body = p->left;
        for (auto& m : inner) {
            const Action& a = m.action;
            if (a.matches().mentions(y))
                continue;
            if (a.is_silent()) {
                out.push_back({a, pi::nu(y, m.target), {}});
                continue;
            }
            if (a.subject() == y)
                continue;
            if (m.is_family()) {
                NameSet avoid = free_names(body);
                avoid.insert(y);
                Name alt = fresh_name(avoid);
                auto resolve = m.family;
                out.push_back({a, nullptr, [resolve, y, alt](const Name& w) {
                                   if (w == y)
                                       return pi::nu(alt, swap_names(resolve(alt), y, alt));
                                   return pi::nu(y, resolve(w));
                               }});
                continue;
            }
            if (a.is_bound()) {
                Move r = *a.object() == y ? rename_bound(m, join(free_names(body), {y})) : m;
                out.push_back({r.action, pi::nu(y, r.target), {}});
                continue;
            }
            if (a.object() == y) {
                if (a.is_output())
                    out.push_back({Action::bound_out(a.matches(), a.subject(), y), m.target, {}});
                continue;
            }
            out.push_back({a, pi::nu(y, m.target), {}});
        }
    }

    void parallel(const Pi& p, std::vector<Move> left, std::vector<Move> right, std::vector<Move>& out) const {
        const Pi& P = p->left;
        const Pi& Q = p->right;
        NameSet fnP = free_names(P);
        NameSet fnQ = free_names(Q);
        NameSet fnPQ = join(fnP, fnQ);

        auto lift = [&](const std::vector<Move>& ms, const NameSet& other_fn, bool on_left) {
            for (const auto& m : ms) {
                if (m.is_family()) {
                    auto resolve = m.family;
                    Pi other = on_left ? Q : P;
                    out.push_back({m.action, nullptr, [resolve, other, on_left](const Name& w) {
                                       return on_left ? pi::par(resolve(w), other) : pi::par(other, resolve(w));
                                   }});
                    continue;
                }
                Move r = m;
                if (m.action.is_bound() && other_fn.contains(*m.action.object()))
                    r = rename_bound(m, fnPQ);
                out.push_back({r.action, on_left ? pi::par(r.target, Q) : pi::par(P, r.target), {}});
            }
        };
        lift(left, fnQ, true);
        lift(right, fnP, false);

        auto communicate = [&](const Move& o, const Move& i, bool out_on_left) {
            if (!o.action.is_output() || !i.action.is_input() || o.is_family())
                return;
            const Name& x = o.action.subject();
            const Name& v = i.action.subject();
            if (!symbolic_ && x != v)
                return;
            Action label = Action::silent(prepend_match(o.action.matches().then(i.action.matches()), x, v));
            auto place = [&](Pi po, Pi pi_) {
                return out_on_left ? pi::par(std::move(po), std::move(pi_)) : pi::par(std::move(pi_), std::move(po));
            };
            if (o.action.kind() == ActionKind::FreeOut) {
                const Name& y = *o.action.object();
                Pi received = i.is_family() ? i.family(y) : rename(i.target, *i.action.object(), y);
                out.push_back({label, place(o.target, received), {}});
                return;
            }
            // close: both sides agree on one fresh private name
            NameSet avoid = fnPQ;
            NameSet fo = free_names(o.target);
            fo.erase(*o.action.object());
            avoid = join(avoid, fo);
            if (!i.is_family()) {
                NameSet fi = free_names(i.target);
                fi.erase(*i.action.object());
                avoid = join(avoid, fi);
            }
            Name u = fresh_name(avoid);
            Pi sent = rename(o.target, *o.action.object(), u);
            Pi received = i.is_family() ? i.family(u) : rename(i.target, *i.action.object(), u);
            out.push_back({label, pi::nu(u, place(sent, received)), {}});
        };
        for (const auto& l : left)
            for (const auto& r : right) {
                communicate(l, r, true);
                communicate(r, l, false);
            }
    }

    const DefEnv& env_;
    bool early_;
    bool symbolic_;
};

struct Collected {
    std::map<std::pair<std::string, std::string>, PiTransition> by_key;

    void add(Action a, Pi target) {
        auto key = std::make_pair(a.str(), alpha_key(target));
        by_key.try_emplace(std::move(key), PiTransition{std::move(a), std::move(target)});
    }

    std::vector<PiTransition> list() && {
        std::vector<PiTransition> out;
        out.reserve(by_key.size());
        for (auto& [k, t] : by_key)
            out.push_back(std::move(t));
        return out;
    }
};

// Bound objects renamed to the least reserved name outside fn(source).
std::pair<Action, Pi> normalize_bound(const Move& m, const NameSet& fn_source) {
    if (!m.action.is_bound())
        return {m.action, m.target};
    Name u = fresh_name(fn_source);
    return {m.action.with_object(u), rename(m.target, *m.action.object(), u)};
}

bool is_early(PiSemantics s) { return s == PiSemantics::Early || s == PiSemantics::EarlySymbolic; }
bool is_symbolic(PiSemantics s) { return s == PiSemantics::LateSymbolic || s == PiSemantics::EarlySymbolic; }

} // namespace

std::vector<PiTransition> step_pi(const Pi& p, const DefEnv& env, PiSemantics sem, const NameSet& pool) {
    Engine engine(env, is_early(sem), is_symbolic(sem));
    NameSet fn = free_names(p);
    Collected c;
    for (const auto& m : engine.moves(p)) {
        if (m.is_family()) {
            for (const auto& w : pool)
                c.add(m.action.with_object(w), m.family(w));
            continue;
        }
        auto [a, t] = normalize_bound(m, fn);
        c.add(std::move(a), std::move(t));
    }
    return std::move(c).list();
}

std::vector<PiTransition> step_late(const Pi& p, const DefEnv& env) { return step_pi(p, env, PiSemantics::Late); }

std::vector<PiTransition> step_early(const Pi& p, const DefEnv& env, const NameSet& pool) {
    return step_pi(p, env, PiSemantics::Early, pool);
}

std::vector<PiTransition> step_late_symbolic(const Pi& p, const DefEnv& env) {
    return step_pi(p, env, PiSemantics::LateSymbolic);
}

std::vector<PiTransition> step_early_symbolic(const Pi& p, const DefEnv& env, const NameSet& pool) {
    return step_pi(p, env, PiSemantics::EarlySymbolic, pool);
}

std::vector<Pi> step_early_tau(const Pi& p, const DefEnv& env) {
    Engine engine(env, true, false);
    Collected c;
    for (const auto& m : engine.moves(p))
        if (m.action.is_tau())
            c.add(m.action, m.target);
    std::vector<Pi> out;
    for (auto& t : std::move(c).list())
        out.push_back(std::move(t.target));
    return out;
}

std::vector<PiTransition> step_early_symbolic_tau(const Pi& p, const DefEnv& env) {
    Engine engine(env, true, true);
    Collected c;
    for (const auto& m : engine.moves(p))
        if (m.action.is_silent())
            c.add(m.action, m.target);
    return std::move(c).list();
}

namespace {

void collect_barbs(const Pi& p, const DefEnv& env, int depth, BarbSet& out) {
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return;
    case K::Prefix:
        if (p->m.empty() && p->prefix != PrefixKind::Tau)
            out.insert(Barb{p->x, p->prefix == PrefixKind::Out});
        return;
    case K::Sum:
    case K::Par:
        collect_barbs(p->left, env, depth, out);
        collect_barbs(p->right, env, depth, out);
        return;
    case K::Match:
        if (p->x == p->y)
            collect_barbs(p->left, env, depth, out);
        return;
    case K::Nu: {
        BarbSet inner;
        collect_barbs(p->left, env, depth, inner);
        for (const auto& b : inner)
            if (b.name != p->y)
                out.insert(b);
        return;
    }
    case K::Ide: {
        if (depth >= kUnfoldGuard)
            throw SemanticsError("unguarded recursion through " + p->ident + " exceeds the unfolding guard of " +
                                 std::to_string(kUnfoldGuard));
        Engine unfolder(env, true, false);
        collect_barbs(unfolder.unfold(p), env, depth + 1, out);
        return;
    }
    }
}

} // namespace

BarbSet barbs_pi(const Pi& p, const DefEnv& env) {
    BarbSet out;
    collect_barbs(p, env, 0, out);
    return out;
}

NameSet default_pool(const Pi& p, std::size_t extra) {
    NameSet pool = all_names(p);
    NameSet avoid = pool;
    for (std::size_t i = 0; i < extra; ++i) {
        Name n = fresh_name(avoid);
        avoid.insert(n);
        pool.insert(n);
    }
    return pool;
}

// ---- clash-freedom

std::vector<Pi> h_closure(const Pi& p, const DefEnv& env) {
    std::vector<Pi> out;
    std::map<std::string, bool> seen;
    std::vector<Pi> todo{p};
    std::set<std::pair<std::string, std::size_t>> unfolded;
    while (!todo.empty()) {
        Pi q = todo.back();
        todo.pop_back();
        if (!seen.emplace(print(q), true).second)
            continue;
        out.push_back(q);
        if (q->left)
            todo.push_back(q->left);
        if (q->right)
            todo.push_back(q->right);
        if (q->kind == PiNode::Kind::Ide) {
            auto key = std::make_pair(q->ident, q->args.size());
            if (unfolded.insert(key).second)
                todo.push_back(env.pi_def(q->ident, q->args.size()).body);
        }
    }
    return out;
}

NameSet rn(const Pi& p, const DefEnv& env) {
    NameSet out;
    for (const auto& q : h_closure(p, env))
        if (q->kind == PiNode::Kind::Nu)
            out.insert(q->y);
    return out;
}

namespace {

std::string show(const NameSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : s) {
        out += (first ? "" : ",") + n.str();
        first = false;
    }
    return out + "}";
}

NameSet intersect(const NameSet& a, const NameSet& b) {
    NameSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace

ClashReport is_clash_free(const Pi& p, const DefEnv& env) {
    ClashReport report;
    auto violate = [&](std::string msg) {
        report.clash_free = false;
        report.violations.push_back(std::move(msg));
    };
    // Well-typedness holds by construction: binders and parameters are public
    // names of the source language, so that clause never fails here.
    for (const auto& q : h_closure(p, env)) {
        if (q->kind == PiNode::Kind::Nu && rn(q->left, env).contains(q->y))
            violate("nested restriction: y ∈ RN(Q) for (ν" + q->y.str() + ")Q = " + print(q));
        if (q->kind == PiNode::Kind::Par) {
            NameSet both = intersect(rn(q->left, env), rn(q->right, env));
            if (!both.empty())
                violate("RN(Q₁) ∩ RN(Q₂) ≠ ∅: " + show(both) + " in " + print(q));
        }
    }
    NameSet free_bound = intersect(free_names(p), rn(p, env));
    if (!free_bound.empty())
        violate("fn(P) ∩ RN(P) ≠ ∅: " + show(free_bound));
    return report;
}

} // namespace picalc
