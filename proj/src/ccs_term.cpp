#include "picalc/ccs_term.hpp"

#include <algorithm>

namespace picalc {

namespace ccs {

namespace {

Ccs make(CcsNode node) { return std::make_shared<const CcsNode>(std::move(node)); }

} // namespace

Ccs nil() {
    static const Ccs zero = make(CcsNode{});
    return zero;
}

Ccs prefix(Action a, Ccs cont) {
    CcsNode n;
    n.kind = CcsNode::Kind::Prefix;
    n.action = std::move(a);
    n.children.push_back(std::move(cont));
    return make(std::move(n));
}

Ccs sum(std::vector<Ccs> branches) {
    CcsNode n;
    n.kind = CcsNode::Kind::Sum;
    n.children = std::move(branches);
    return make(std::move(n));
}

Ccs sum(Ccs e, Ccs f) { return sum(std::vector<Ccs>{std::move(e), std::move(f)}); }

Ccs input_sum(MatchSeq m, Name x, Name y, Ccs body, Instantiation inst, bool public_only) {
    CcsNode n;
    n.kind = CcsNode::Kind::InputSum;
    n.m = std::move(m);
    n.x = std::move(x);
    n.y = std::move(y);
    n.inst = inst;
    n.public_only = public_only;
    n.children.push_back(std::move(body));
    return make(std::move(n));
}

Ccs par(Ccs e, Ccs f, bool gamma) {
    CcsNode n;
    n.kind = CcsNode::Kind::Par;
    n.gamma = gamma;
    n.children.push_back(std::move(e));
    n.children.push_back(std::move(f));
    return make(std::move(n));
}

Ccs restrict(Ccs e, NameSet channels) {
    CcsNode n;
    n.kind = CcsNode::Kind::Restrict;
    n.restricted = std::move(channels);
    n.children.push_back(std::move(e));
    return make(std::move(n));
}

Ccs relabel(Ccs e, Relabelling rel) {
    CcsNode n;
    n.kind = CcsNode::Kind::Relabel;
    n.rel = std::move(rel);
    n.children.push_back(std::move(e));
    return make(std::move(n));
}

Ccs trigger(Name x, Name y, Ccs e) {
    CcsNode n;
    n.kind = CcsNode::Kind::Trigger;
    n.x = std::move(x);
    n.y = std::move(y);
    n.children.push_back(std::move(e));
    return make(std::move(n));
}

Ccs ide(std::string ident) {
    CcsNode n;
    n.kind = CcsNode::Kind::Ide;
    n.ident = std::move(ident);
    return make(std::move(n));
}

} // namespace ccs

bool same(const Ccs& e, const Ccs& f) {
    if (e == f)
        return true;
    if (e->kind != f->kind || e->children.size() != f->children.size())
        return false;
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Nil:
        return true;
    case K::Prefix:
        if (e->action != f->action)
            return false;
        break;
    case K::Sum:
        break;
    case K::InputSum:
        if (e->m != f->m || e->x != f->x || e->y != f->y || e->inst != f->inst ||
            e->public_only != f->public_only)
            return false;
        break;
    case K::Par:
        if (e->gamma != f->gamma)
            return false;
        break;
    case K::Restrict:
        if (e->restricted != f->restricted)
            return false;
        break;
    case K::Relabel:
        if (e->rel != f->rel)
            return false;
        break;
    case K::Trigger:
        if (e->x != f->x || e->y != f->y)
            return false;
        break;
    case K::Ide:
        return e->ident == f->ident;
    }
    for (std::size_t i = 0; i < e->children.size(); ++i)
        if (!same(e->children[i], f->children[i]))
            return false;
    return true;
}

namespace {

int level_of(const Ccs& e) {
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Sum:
        return e->children.size() < 2 ? 4 : 0;
    case K::Par:
        return 1;
    case K::Prefix:
    case K::InputSum:
    case K::Trigger:
        return 2;
    case K::Restrict:
    case K::Relabel:
        return 3;
    default:
        return 4;
    }
}

void collect_names(const Ccs& e, NameSet& out) {
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Prefix: {
        NameSet a = e->action.names();
        out.insert(a.begin(), a.end());
        break;
    }
    case K::InputSum: {
        NameSet m = e->m.names();
        out.insert(m.begin(), m.end());
        out.insert(e->x);
        out.insert(e->y);
        break;
    }
    case K::Restrict:
        out.insert(e->restricted.begin(), e->restricted.end());
        break;
    case K::Relabel:
        for (const auto& [a, b] : e->rel.pairs()) {
            out.insert(a);
            out.insert(b);
        }
        if (e->rel.kind() == Relabelling::Kind::PNu)
            out.insert(e->rel.restricted());
        break;
    case K::Trigger:
        out.insert(e->x);
        out.insert(e->y);
        break;
    default:
        break;
    }
    for (const auto& c : e->children)
        collect_names(c, out);
}

// Sum variable for printing an input sum: outside every name it could be
// confused with.
Name sum_variable(const Ccs& e) {
    NameSet avoid;
    collect_names(e, avoid);
    for (const char* base : {"z", "w", "u"}) {
        Name n = Name::pub(base);
        if (!avoid.contains(n))
            return n;
    }
    for (int k = 0;; ++k) {
        Name n = Name::pub("z" + std::to_string(k));
        if (!avoid.contains(n))
            return n;
    }
}

void emit(std::string& out, const Ccs& e, int level) {
    bool parens = level_of(e) < level;
    if (parens)
        out += '(';
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Nil:
        out += '0';
        break;
    case K::Prefix:
        out += e->action.str() + ".";
        emit(out, e->child(), 2);
        break;
    case K::Sum:
        if (e->children.size() < 2) {
            out += "sum {";
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i)
                    out += ", ";
                emit(out, e->children[i], 0);
            }
            out += "}";
            break;
        }
        for (std::size_t i = 0; i < e->children.size(); ++i) {
            if (i)
                out += " + ";
            emit(out, e->children[i], 1);
        }
        break;
    case K::InputSum: {
        Name z = sum_variable(e);
        out += "sum " + z.str() + (e->public_only ? ":N" : "") + ". " + e->m.str() + e->x.str() + "?" +
               z.str() + ".((";
        // the body alone, then the instantiating relabelling
        std::string body;
        emit(body, e->child(), 0);
        out += body + ")[";
        if (e->inst == Instantiation::Spare)
            out += z.str() + "/" + e->y.str();
        else
            out += "map: " + e->y.str() + "->" + z.str();
        out += "])";
        break;
    }
    case K::Par:
        emit(out, e->children[0], 1);
        out += e->gamma ? " || " : " | ";
        emit(out, e->children[1], 2);
        break;
    case K::Restrict: {
        emit(out, e->child(), 3);
        out += " \\ {";
        bool first = true;
        for (const auto& n : e->restricted) {
            out += (first ? "" : ",") + n.str();
            first = false;
        }
        out += "}";
        break;
    }
    case K::Relabel:
        emit(out, e->child(), 3);
        out += "[" + e->rel.str() + "]";
        break;
    case K::Trigger:
        out += "[" + e->x.str() + "=" + e->y.str() + "] => ";
        emit(out, e->child(), 2);
        break;
    case K::Ide:
        out += e->ident;
        break;
    }
    if (parens)
        out += ')';
}

void collect_relabellings(const Ccs& e, std::vector<Relabelling>& out) {
    if (e->kind == CcsNode::Kind::Relabel)
        out.push_back(e->rel);
    for (const auto& c : e->children)
        collect_relabellings(c, out);
}

Ccs rebuild(const Ccs& e, std::vector<Ccs> children) {
    CcsNode n = *e;
    n.children = std::move(children);
    return std::make_shared<const CcsNode>(std::move(n));
}

} // namespace

std::string print(const Ccs& e) {
    std::string out;
    emit(out, e, 0);
    return out;
}

std::size_t size(const Ccs& e) {
    std::size_t n = 1;
    for (const auto& c : e->children)
        n += size(c);
    return n;
}

NameSet all_names(const Ccs& e) {
    NameSet out;
    collect_names(e, out);
    return out;
}

std::vector<Relabelling> relabellings(const Ccs& e) {
    std::vector<Relabelling> out;
    collect_relabellings(e, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Ccs normalize(const Ccs& e) {
    using K = CcsNode::Kind;
    switch (e->kind) {
    case K::Nil:
    case K::Ide:
        return e;
    case K::Relabel:
        if (e->rel.is_identity())
            return normalize(e->child());
        return ccs::relabel(normalize(e->child()), e->rel);
    case K::Sum: {
        std::vector<std::pair<std::string, Ccs>> flat;
        std::vector<Ccs> todo(e->children.rbegin(), e->children.rend());
        while (!todo.empty()) {
            Ccs c = normalize(todo.back());
            todo.pop_back();
            if (c->kind == K::Sum) {
                for (const auto& g : c->children)
                    flat.emplace_back(print(g), g);
            } else if (c->kind != K::Nil) {
                flat.emplace_back(print(c), c);
            }
        }
        std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        flat.erase(std::unique(flat.begin(), flat.end(),
                               [](const auto& a, const auto& b) { return a.first == b.first; }),
                   flat.end());
        if (flat.empty())
            return ccs::nil();
        if (flat.size() == 1)
            return flat.front().second;
        std::vector<Ccs> branches;
        for (auto& [key, c] : flat)
            branches.push_back(std::move(c));
        return ccs::sum(std::move(branches));
    }
    default: {
        std::vector<Ccs> children;
        children.reserve(e->children.size());
        for (const auto& c : e->children)
            children.push_back(normalize(c));
        return rebuild(e, std::move(children));
    }
    }
}

std::string ccs_key(const Ccs& e) { return print(normalize(e)); }

} // namespace picalc
