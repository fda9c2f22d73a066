#include "picalc/encode.hpp"

#include "picalc/errors.hpp"

namespace picalc {

std::string translated_ident(const DefEnv& env, const std::string& ident, std::size_t arity) {
    std::size_t arities = 0;
    for (const auto& [key, def] : env.pi)
        if (key.first == ident)
            ++arities;
    std::string base = arities > 1 ? ident + "_" + std::to_string(arity) : ident;
    return env.ccs.contains(base) ? "T_" + base : base;
}

namespace {

class Translator {
public:
    Translator(const DefEnv& env, Mode mode, Instantiation inst) : env_(env), mode_(mode), inst_(inst) {}

    Ccs run(const Pi& p) {
        using K = PiNode::Kind;
        switch (p->kind) {
        case K::Nil:
            return ccs::nil();
        case K::Prefix:
            if (mode_ == Mode::Strict && !p->m.empty())
                throw SemanticsError("matching sequence on a prefix needs implicit matching: " + print(p));
            switch (p->prefix) {
            case PrefixKind::Tau:
                return ccs::prefix(Action::silent(p->m), run(p->left));
            case PrefixKind::Out:
                return ccs::prefix(Action::free_out(p->m, p->x, p->y), run(p->left));
            case PrefixKind::In:
                return ccs::input_sum(p->m, p->x, p->y, run(p->left), inst_);
            }
            break;
        case K::Nu:
            return ccs::relabel(run(p->left), Relabelling::pnu(p->y));
        case K::Match:
            if (mode_ == Mode::Im)
                throw SemanticsError("the match operator is not available with implicit matching: " + print(p));
            return ccs::trigger(p->x, p->y, run(p->left));
        case K::Par:
            return ccs::par(ccs::relabel(run(p->left), Relabelling::tag_l()),
                            ccs::relabel(run(p->right), Relabelling::tag_r()));
        case K::Sum:
            return ccs::sum(run(p->left), run(p->right));
        case K::Ide:
            return call(p);
        }
        return ccs::nil();
    }

    DefEnv definitions() {
        DefEnv out;
        out.ccs = env_.ccs;
        // Definitions are translated lazily as calls reach them; this loop
        // picks up the unreachable ones too.
        for (const auto& [key, def] : env_.pi)
            wanted_.insert(key);
        while (!wanted_.empty()) {
            auto key = *wanted_.begin();
            wanted_.erase(wanted_.begin());
            if (!done_.insert(key).second)
                continue;
            const PiDefinition& def = env_.pi_def(key.first, key.second);
            out.ccs[translated_ident(env_, key.first, key.second)] = run(def.body);
        }
        return out;
    }

private:
    Ccs call(const Pi& p) {
        const PiDefinition& def = env_.pi_def(p->ident, p->args.size());
        wanted_.insert({p->ident, p->args.size()});
        Ccs a = ccs::ide(translated_ident(env_, p->ident, p->args.size()));
        if (def.params.empty())
            return a;
        return ccs::relabel(a, Relabelling::subs(p->args, def.params));
    }

    const DefEnv& env_;
    Mode mode_;
    Instantiation inst_;
    std::set<std::pair<std::string, std::size_t>> wanted_;
    std::set<std::pair<std::string, std::size_t>> done_;
};

} // namespace

Translation translate_T(const Pi& p, const DefEnv& env, Mode mode, Instantiation inst) {
    Translator t(env, mode, inst);
    Translation out;
    out.term = t.run(p);
    out.env = t.definitions();
    return out;
}

Ccs translate_E(const Pi& p) {
    using K = PiNode::Kind;
    auto outside = [&](const std::string& what) {
        return SemanticsError("the handshake encoding covers 0, prefixes, + and | only; found " + what + " in " +
                              print(p));
    };
    switch (p->kind) {
    case K::Nil:
        return ccs::nil();
    case K::Prefix:
        if (!p->m.empty())
            throw outside("a matching sequence");
        switch (p->prefix) {
        case PrefixKind::Tau:
            return ccs::prefix(Action::silent(), translate_E(p->left));
        case PrefixKind::Out:
            return ccs::prefix(Action::free_out({}, p->x, p->y), translate_E(p->left));
        case PrefixKind::In:
            return ccs::input_sum({}, p->x, p->y, translate_E(p->left), Instantiation::Plain, true);
        }
        break;
    case K::Par:
        return ccs::par(translate_E(p->left), translate_E(p->right), false);
    case K::Sum:
        return ccs::sum(translate_E(p->left), translate_E(p->right));
    case K::Nu:
        throw outside("a restriction");
    case K::Match:
        throw outside("a match");
    case K::Ide:
        throw outside("an agent identifier");
    }
    return ccs::nil();
}

namespace {

// The context C_g of each clause, applied to already translated arguments.
Ccs context(const Pi& p, const DefEnv& env, const std::vector<Ccs>& args) {
    using K = PiNode::Kind;
    switch (p->kind) {
    case K::Nil:
        return ccs::nil();
    case K::Prefix:
        if (p->prefix == PrefixKind::Tau)
            return ccs::prefix(Action::silent(p->m), args[0]);
        if (p->prefix == PrefixKind::Out)
            return ccs::prefix(Action::free_out(p->m, p->x, p->y), args[0]);
        return ccs::input_sum(p->m, p->x, p->y, args[0]);
    case K::Nu:
        return ccs::relabel(args[0], Relabelling::pnu(p->y));
    case K::Match:
        return ccs::trigger(p->x, p->y, args[0]);
    case K::Par:
        return ccs::par(ccs::relabel(args[0], Relabelling::tag_l()), ccs::relabel(args[1], Relabelling::tag_r()));
    case K::Sum:
        return ccs::sum(args[0], args[1]);
    case K::Ide: {
        Ccs a = ccs::ide(translated_ident(env, p->ident, p->args.size()));
        const PiDefinition& def = env.pi_def(p->ident, p->args.size());
        return def.params.empty() ? a : ccs::relabel(a, Relabelling::subs(p->args, def.params));
    }
    }
    return ccs::nil();
}

bool compositional_at(const Pi& p, const DefEnv& env, Mode mode) {
    std::vector<Ccs> args;
    for (const Pi& child : {p->left, p->right}) {
        if (!child)
            continue;
        if (!compositional_at(child, env, mode))
            return false;
        args.push_back(translate_T(child, env, mode).term);
    }
    return same(translate_T(p, env, mode).term, context(p, env, args));
}

} // namespace

bool check_compositionality(const Pi& p, const DefEnv& env, Mode mode) { return compositional_at(p, env, mode); }

} // namespace picalc
