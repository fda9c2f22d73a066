#include "picalc/pi_term.hpp"

#include <algorithm>

#include "picalc/errors.hpp"

namespace picalc {

namespace pi {

namespace {

Pi make(PiNode node) { return std::make_shared<const PiNode>(std::move(node)); }

Pi prefix(PrefixKind kind, MatchSeq m, Name x, Name y, Pi cont) {
    PiNode n;
    n.kind = PiNode::Kind::Prefix;
    n.prefix = kind;
    n.m = std::move(m);
    n.x = std::move(x);
    n.y = std::move(y);
    n.left = std::move(cont);
    return make(std::move(n));
}

} // namespace

Pi nil() {
    static const Pi zero = make(PiNode{});
    return zero;
}

Pi tau(MatchSeq m, Pi cont) { return prefix(PrefixKind::Tau, std::move(m), {}, {}, std::move(cont)); }
Pi tau(Pi cont) { return tau({}, std::move(cont)); }

Pi out(MatchSeq m, Name x, Name y, Pi cont) {
    return prefix(PrefixKind::Out, std::move(m), std::move(x), std::move(y), std::move(cont));
}
Pi out(Name x, Name y, Pi cont) { return out({}, std::move(x), std::move(y), std::move(cont)); }

Pi in(MatchSeq m, Name x, Name y, Pi cont) {
    return prefix(PrefixKind::In, std::move(m), std::move(x), std::move(y), std::move(cont));
}
Pi in(Name x, Name y, Pi cont) { return in({}, std::move(x), std::move(y), std::move(cont)); }

Pi nu(Name y, Pi body) {
    PiNode n;
    n.kind = PiNode::Kind::Nu;
    n.y = std::move(y);
    n.left = std::move(body);
    return make(std::move(n));
}

Pi match(Name x, Name y, Pi body) {
    PiNode n;
    n.kind = PiNode::Kind::Match;
    n.x = std::move(x);
    n.y = std::move(y);
    n.left = std::move(body);
    return make(std::move(n));
}

Pi par(Pi p, Pi q) {
    PiNode n;
    n.kind = PiNode::Kind::Par;
    n.left = std::move(p);
    n.right = std::move(q);
    return make(std::move(n));
}

Pi sum(Pi p, Pi q) {
    PiNode n;
    n.kind = PiNode::Kind::Sum;
    n.left = std::move(p);
    n.right = std::move(q);
    return make(std::move(n));
}

Pi ide(std::string ident, std::vector<Name> args) {
    PiNode n;
    n.kind = PiNode::Kind::Ide;
    n.ident = std::move(ident);
    n.args = std::move(args);
    return make(std::move(n));
}

} // namespace pi

const PiDefinition& DefEnv::pi_def(const std::string& ident, std::size_t arity) const {
    auto it = pi.find({ident, arity});
    if (it == pi.end())
        throw SemanticsError("unbound agent identifier " + ident + "/" + std::to_string(arity));
    return it->second;
}

const Ccs& DefEnv::ccs_def(const std::string& ident) const {
    auto it = ccs.find(ident);
    if (it == ccs.end())
        throw SemanticsError("unbound agent identifier " + ident);
    return it->second;
}

bool same(const Pi& p, const Pi& q) {
    if (p == q)
        return true;
    if (p->kind != q->kind)
        return false;
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return true;
    case K::Prefix:
        return p->prefix == q->prefix && p->m == q->m && p->x == q->x && p->y == q->y &&
               same(p->left, q->left);
    case K::Nu:
        return p->y == q->y && same(p->left, q->left);
    case K::Match:
        return p->x == q->x && p->y == q->y && same(p->left, q->left);
    case K::Par:
    case K::Sum:
        return same(p->left, q->left) && same(p->right, q->right);
    case K::Ide:
        return p->ident == q->ident && p->args == q->args;
    }
    return false;
}

namespace {

int level_of(const Pi& p) {
    switch (p->kind) {
    case PiNode::Kind::Sum:
        return 0;
    case PiNode::Kind::Par:
        return 1;
    case PiNode::Kind::Prefix:
    case PiNode::Kind::Nu:
    case PiNode::Kind::Match:
        return 2;
    default:
        return 3;
    }
}

void emit(std::string& out, const Pi& p, int level) {
    bool parens = level_of(p) < level;
    if (parens)
        out += '(';
    switch (p->kind) {
    case PiNode::Kind::Nil:
        out += '0';
        break;
    case PiNode::Kind::Prefix:
        out += p->m.str();
        switch (p->prefix) {
        case PrefixKind::Tau:
            out += "tau";
            break;
        case PrefixKind::Out:
            out += p->x.str() + "!" + p->y.str();
            break;
        case PrefixKind::In:
            out += p->x.str() + "(" + p->y.str() + ")";
            break;
        }
        out += '.';
        emit(out, p->left, 2);
        break;
    case PiNode::Kind::Nu:
        out += "nu " + p->y.str() + ". ";
        emit(out, p->left, 2);
        break;
    case PiNode::Kind::Match:
        out += "[" + p->x.str() + "=" + p->y.str() + "]";
        emit(out, p->left, 2);
        break;
    case PiNode::Kind::Par:
        emit(out, p->left, 1);
        out += " | ";
        emit(out, p->right, 2);
        break;
    case PiNode::Kind::Sum:
        emit(out, p->left, 0);
        out += " + ";
        emit(out, p->right, 1);
        break;
    case PiNode::Kind::Ide:
        out += p->ident;
        if (!p->args.empty()) {
            out += '(';
            for (std::size_t i = 0; i < p->args.size(); ++i)
                out += (i ? "," : "") + p->args[i].str();
            out += ')';
        }
        break;
    }
    if (parens)
        out += ')';
}

void collect_free(const Pi& p, NameSet& out) {
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return;
    case K::Prefix: {
        NameSet m = p->m.names();
        out.insert(m.begin(), m.end());
        if (p->prefix == PrefixKind::Tau) {
            collect_free(p->left, out);
            return;
        }
        out.insert(p->x);
        if (p->prefix == PrefixKind::Out) {
            out.insert(p->y);
            collect_free(p->left, out);
            return;
        }
        NameSet inner;
        collect_free(p->left, inner);
        inner.erase(p->y);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case K::Nu: {
        NameSet inner;
        collect_free(p->left, inner);
        inner.erase(p->y);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case K::Match:
        out.insert(p->x);
        out.insert(p->y);
        collect_free(p->left, out);
        return;
    case K::Par:
    case K::Sum:
        collect_free(p->left, out);
        collect_free(p->right, out);
        return;
    case K::Ide:
        out.insert(p->args.begin(), p->args.end());
        return;
    }
}

void collect_bound(const Pi& p, NameSet& out) {
    if (!p)
        return;
    if ((p->kind == PiNode::Kind::Prefix && p->prefix == PrefixKind::In) || p->kind == PiNode::Kind::Nu)
        out.insert(p->y);
    collect_bound(p->left, out);
    collect_bound(p->right, out);
}

Name look(const Subst& sigma, const Name& n) {
    auto it = sigma.find(n);
    return it == sigma.end() ? n : it->second;
}

MatchSeq subst_matches(const MatchSeq& m, const Subst& sigma) {
    std::vector<MatchSeq::Entry> out;
    for (const auto& [a, b] : m.entries())
        out.emplace_back(look(sigma, a), look(sigma, b));
    return MatchSeq(std::move(out));
}

bool in_range(const Subst& sigma, const Name& n) {
    return std::any_of(sigma.begin(), sigma.end(), [&](const auto& kv) { return kv.second == n; });
}

// The name to use for binder y of `binder_term` (the whole ν- or input-term
// whose free names must be avoided), and the substitution for the body.
std::pair<Name, Subst> rebind(const Name& y, const Pi& body, const Subst& sigma) {
    if (!sigma.contains(y) && !in_range(sigma, y))
        return {y, sigma};
    NameSet avoid;
    collect_free(body, avoid);
    avoid.erase(y);
    for (const auto& [k, v] : sigma) {
        avoid.insert(k);
        avoid.insert(v);
    }
    Name z = fresh_name(avoid);
    Subst inner = sigma;
    inner[y] = z;
    return {z, inner};
}

} // namespace

std::string print(const Pi& p) {
    std::string out;
    emit(out, p, 0);
    return out;
}

std::size_t size(const Pi& p) {
    if (!p)
        return 0;
    return 1 + size(p->left) + size(p->right);
}

NameSet free_names(const Pi& p) {
    NameSet out;
    collect_free(p, out);
    return out;
}

NameSet bound_names(const Pi& p) {
    NameSet out;
    collect_bound(p, out);
    return out;
}

NameSet all_names(const Pi& p) {
    NameSet out = free_names(p);
    NameSet b = bound_names(p);
    out.insert(b.begin(), b.end());
    return out;
}

Pi substitute(const Pi& p, const Subst& sigma) {
    if (sigma.empty())
        return p;
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return p;
    case K::Prefix:
        switch (p->prefix) {
        case PrefixKind::Tau:
            return pi::tau(subst_matches(p->m, sigma), substitute(p->left, sigma));
        case PrefixKind::Out:
            return pi::out(subst_matches(p->m, sigma), look(sigma, p->x), look(sigma, p->y),
                           substitute(p->left, sigma));
        case PrefixKind::In: {
            auto [z, inner] = rebind(p->y, p->left, sigma);
            return pi::in(subst_matches(p->m, sigma), look(sigma, p->x), z, substitute(p->left, inner));
        }
        }
        break;
    case K::Nu: {
        auto [z, inner] = rebind(p->y, p->left, sigma);
        return pi::nu(z, substitute(p->left, inner));
    }
    case K::Match:
        return pi::match(look(sigma, p->x), look(sigma, p->y), substitute(p->left, sigma));
    case K::Par:
        return pi::par(substitute(p->left, sigma), substitute(p->right, sigma));
    case K::Sum:
        return pi::sum(substitute(p->left, sigma), substitute(p->right, sigma));
    case K::Ide: {
        std::vector<Name> args;
        args.reserve(p->args.size());
        for (const auto& a : p->args)
            args.push_back(look(sigma, a));
        return pi::ide(p->ident, std::move(args));
    }
    }
    return p;
}

Pi swap_names(const Pi& p, const Name& a, const Name& b) {
    auto sw = [&](const Name& n) { return n == a ? b : n == b ? a : n; };
    auto sw_m = [&](const MatchSeq& m) {
        std::vector<MatchSeq::Entry> out;
        for (const auto& [x, y] : m.entries())
            out.emplace_back(sw(x), sw(y));
        return MatchSeq(std::move(out));
    };
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return p;
    case K::Prefix:
        switch (p->prefix) {
        case PrefixKind::Tau:
            return pi::tau(sw_m(p->m), swap_names(p->left, a, b));
        case PrefixKind::Out:
            return pi::out(sw_m(p->m), sw(p->x), sw(p->y), swap_names(p->left, a, b));
        case PrefixKind::In:
            return pi::in(sw_m(p->m), sw(p->x), sw(p->y), swap_names(p->left, a, b));
        }
        break;
    case K::Nu:
        return pi::nu(sw(p->y), swap_names(p->left, a, b));
    case K::Match:
        return pi::match(sw(p->x), sw(p->y), swap_names(p->left, a, b));
    case K::Par:
        return pi::par(swap_names(p->left, a, b), swap_names(p->right, a, b));
    case K::Sum:
        return pi::sum(swap_names(p->left, a, b), swap_names(p->right, a, b));
    case K::Ide: {
        std::vector<Name> args;
        for (const auto& n : p->args)
            args.push_back(sw(n));
        return pi::ide(p->ident, std::move(args));
    }
    }
    return p;
}

namespace {

class Canonicalizer {
public:
    explicit Canonicalizer(const Pi& root) : free_(free_names(root)) {}

    Pi run(const Pi& p) {
        using K = PiNode::Kind;
        switch (p->kind) {
        case K::Nil:
            return p;
        case K::Prefix: {
            MatchSeq m = rename(p->m);
            switch (p->prefix) {
            case PrefixKind::Tau:
                return pi::tau(std::move(m), run(p->left));
            case PrefixKind::Out:
                return pi::out(std::move(m), rename(p->x), rename(p->y), run(p->left));
            case PrefixKind::In: {
                Name x = rename(p->x);
                Name b = bind(p->y);
                Pi body = run(p->left);
                scope_.pop_back();
                return pi::in(std::move(m), std::move(x), std::move(b), std::move(body));
            }
            }
            break;
        }
        case K::Nu: {
            Name b = bind(p->y);
            Pi body = run(p->left);
            scope_.pop_back();
            return pi::nu(std::move(b), std::move(body));
        }
        case K::Match:
            return pi::match(rename(p->x), rename(p->y), run(p->left));
        case K::Par: {
            Pi l = run(p->left);
            return pi::par(std::move(l), run(p->right));
        }
        case K::Sum: {
            Pi l = run(p->left);
            return pi::sum(std::move(l), run(p->right));
        }
        case K::Ide: {
            std::vector<Name> args;
            for (const auto& a : p->args)
                args.push_back(rename(a));
            return pi::ide(p->ident, std::move(args));
        }
        }
        return p;
    }

private:
    Name rename(const Name& n) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == n)
                return it->second;
        return n;
    }

    MatchSeq rename(const MatchSeq& m) const {
        std::vector<MatchSeq::Entry> out;
        for (const auto& [a, b] : m.entries())
            out.emplace_back(rename(a), rename(b));
        return MatchSeq(std::move(out));
    }

    Name bind(const Name& original) {
        Name fresh = reserved_name(next_++);
        while (free_.contains(fresh))
            fresh = reserved_name(next_++);
        scope_.emplace_back(original, fresh);
        return fresh;
    }

    NameSet free_;
    std::vector<std::pair<Name, Name>> scope_;
    std::size_t next_ = 0;
};

} // namespace

Pi alpha_canonical(const Pi& p) { return Canonicalizer(p).run(p); }

bool alpha_eq(const Pi& p, const Pi& q) { return same(alpha_canonical(p), alpha_canonical(q)); }

std::string alpha_key(const Pi& p) { return print(alpha_canonical(p)); }

} // namespace picalc
