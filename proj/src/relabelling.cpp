#include "picalc/relabelling.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace picalc {

namespace {

Name apply_tag(char tag, const Name& x) {
    if (!x.is_private())
        return x;
    const std::string& word = x.text();
    if (x.number() == 0)
        return Name::priv(std::string(1, tag) + word, 0);
    if (word.empty() || word.front() != tag)
        return Name::priv(word, x.number() - 1);
    return x;
}

std::vector<Name> preimage_tag(char tag, const Name& w) {
    if (!w.is_private())
        return {w};
    const std::string& word = w.text();
    bool tagged = !word.empty() && word.front() == tag;
    if (tagged && w.number() == 0)
        return {Name::priv(word.substr(1), 0)};
    if (tagged)
        return {w};
    return {Name::priv(word, w.number() + 1)};
}

// Index k when x is `base` followed by a canonical decimal numeral.
std::optional<long> shift_index(const std::string& base, const Name& x) {
    if (!x.is_plain())
        return std::nullopt;
    const std::string& id = x.text();
    if (id.size() <= base.size() || id.compare(0, base.size(), base) != 0)
        return std::nullopt;
    std::string digits = id.substr(base.size());
    if (digits.size() > 1 && digits.front() == '0')
        return std::nullopt;
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
    if (digits.size() > 15)
        return std::nullopt;
    return std::stol(digits);
}

const Name& plain_p() {
    static const Name p = Name::priv("", 0);
    return p;
}

const Name& plain_p_prime() {
    static const Name p = Name::priv("", 1);
    return p;
}

} // namespace

char tag_letter(Relabelling::Kind kind) {
    switch (kind) {
    case Relabelling::Kind::TagL:
        return 'l';
    case Relabelling::Kind::TagR:
        return 'r';
    case Relabelling::Kind::TagE:
        return 'e';
    default:
        throw std::logic_error("not a tagging relabelling");
    }
}

Relabelling Relabelling::finite_map(Pairs pairs) {
    Relabelling r(Kind::FiniteMap);
    std::set<Name> keys;
    for (const auto& [k, v] : pairs)
        if (!keys.insert(k).second)
            throw std::invalid_argument("finite map relabelling repeats key " + k.str());
    r.pairs_ = std::move(pairs);
    r.compute_injective();
    return r;
}

Relabelling Relabelling::tag_l() { return Relabelling(Kind::TagL); }
Relabelling Relabelling::tag_r() { return Relabelling(Kind::TagR); }
Relabelling Relabelling::tag_e() { return Relabelling(Kind::TagE); }

Relabelling Relabelling::pnu(Name y) {
    if (!y.is_observable())
        throw std::invalid_argument("p_y needs a public name, got " + y.str());
    Relabelling r(Kind::PNu);
    r.y_ = std::move(y);
    return r;
}

Relabelling Relabelling::subs(std::vector<Name> targets, std::vector<Name> sources) {
    if (targets.size() != sources.size())
        throw std::invalid_argument("substitution relabelling needs equally many targets and sources");
    std::set<Name> seen;
    for (const auto& x : sources) {
        if (!x.is_plain())
            throw std::invalid_argument("substitution source must be a plain public name: " + x.str());
        if (!seen.insert(x).second)
            throw std::invalid_argument("substitution sources repeat " + x.str());
    }
    Relabelling r(Kind::SubS);
    for (std::size_t i = 0; i < sources.size(); ++i)
        r.pairs_.emplace_back(std::move(sources[i]), std::move(targets[i]));
    r.compute_injective();
    return r;
}

Relabelling Relabelling::shift(std::string base, int step) {
    if (base.empty())
        throw std::invalid_argument("shift needs a base identifier");
    if (step < 0)
        throw std::invalid_argument("shift step must be non-negative");
    Relabelling r(Kind::Shift);
    r.base_ = std::move(base);
    r.step_ = step;
    return r;
}

void Relabelling::compute_injective() {
    injective_ = true;
    if (kind_ == Kind::SubS) {
        // s_i and x_i both land on the range of a non-empty substitution.
        injective_ = pairs_.empty();
        return;
    }
    std::set<Name> values;
    for (const auto& [k, v] : pairs_) {
        if (!values.insert(v).second) {
            injective_ = false;
            return;
        }
        if (k == v)
            continue;
        bool in_domain = false;
        for (const auto& [k2, v2] : pairs_)
            if (k2 == v)
                in_domain = true;
        if (!in_domain) {
            injective_ = false;
            return;
        }
    }
}

bool Relabelling::is_identity() const {
    switch (kind_) {
    case Kind::FiniteMap:
        return std::all_of(pairs_.begin(), pairs_.end(),
                           [](const auto& kv) { return kv.first == kv.second; });
    case Kind::Shift:
        return step_ == 0;
    case Kind::SubS:
        return pairs_.empty();
    default:
        return false;
    }
}

Name Relabelling::apply(const Name& x) const {
    switch (kind_) {
    case Kind::FiniteMap:
        for (const auto& [k, v] : pairs_)
            if (k == x)
                return v;
        return x;
    case Kind::TagL:
    case Kind::TagR:
    case Kind::TagE:
        return apply_tag(tag_letter(kind_), x);
    case Kind::PNu:
        if (x == y_)
            return plain_p();
        if (x == plain_p_prime())
            return y_;
        return apply_tag('e', x);
    case Kind::SubS: {
        for (const auto& [src, dst] : pairs_)
            if (src == x)
                return dst;
        if (x.sort() == Name::Sort::Spare) {
            auto n = static_cast<int>(pairs_.size());
            if (x.number() <= n)
                return pairs_[static_cast<std::size_t>(x.number() - 1)].first;
            return Name::spare(x.number() - n);
        }
        return x;
    }
    case Kind::Shift:
        if (auto k = shift_index(base_, x))
            return Name::pub(base_ + std::to_string(*k + step_));
        return x;
    }
    return x;
}

std::vector<Name> Relabelling::preimage(const Name& w) const {
    std::vector<Name> out;
    switch (kind_) {
    case Kind::FiniteMap: {
        bool key = false;
        for (const auto& [k, v] : pairs_) {
            if (v == w)
                out.push_back(k);
            if (k == w)
                key = true;
        }
        if (!key)
            out.push_back(w);
        break;
    }
    case Kind::TagL:
    case Kind::TagR:
    case Kind::TagE:
        out = preimage_tag(tag_letter(kind_), w);
        break;
    case Kind::PNu:
        if (w == y_)
            out = {plain_p_prime()};
        else if (w == plain_p())
            out = {y_};
        else
            out = preimage_tag('e', w);
        break;
    case Kind::SubS: {
        bool in_domain = w.sort() == Name::Sort::Spare;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].second == w)
                out.push_back(pairs_[i].first);
            if (pairs_[i].first == w) {
                in_domain = true;
                out.push_back(Name::spare(static_cast<int>(i) + 1));
            }
        }
        if (w.sort() == Name::Sort::Spare)
            out.push_back(Name::spare(w.number() + static_cast<int>(pairs_.size())));
        if (!in_domain)
            out.push_back(w);
        break;
    }
    case Kind::Shift:
        if (auto k = shift_index(base_, w)) {
            if (*k >= step_)
                out.push_back(Name::pub(base_ + std::to_string(*k - step_)));
        } else {
            out.push_back(w);
        }
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Relabelling::str() const {
    switch (kind_) {
    case Kind::FiniteMap: {
        std::string out = "map:";
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            out += (i ? ", " : " ") + pairs_[i].first.str() + "->" + pairs_[i].second.str();
        return out;
    }
    case Kind::TagL:
        return "l";
    case Kind::TagR:
        return "r";
    case Kind::TagE:
        return "e";
    case Kind::PNu:
        return "p_" + y_.str();
    case Kind::SubS: {
        std::string targets, sources;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            targets += (i ? "," : "") + pairs_[i].second.str();
            sources += (i ? "," : "") + pairs_[i].first.str();
        }
        return targets + "/" + sources;
    }
    case Kind::Shift:
        return "shift " + base_ + (step_ == 1 ? "" : " " + std::to_string(step_));
    }
    return {};
}

MatchSeq apply_to_matches(const Relabelling& rel, const MatchSeq& m) {
    std::vector<MatchSeq::Entry> out;
    out.reserve(m.size());
    for (const auto& [x, y] : m.entries())
        out.emplace_back(rel.apply(x), rel.apply(y));
    return MatchSeq(std::move(out));
}

Action apply_to_action(const Relabelling& rel, const Action& a) {
    MatchSeq m = apply_to_matches(rel, a.matches());
    switch (a.kind()) {
    case ActionKind::Silent:
        return Action::silent(std::move(m));
    case ActionKind::FreeOut:
        return Action::free_out(std::move(m), rel.apply(a.subject()),
                                a.object() ? std::optional(rel.apply(*a.object())) : std::nullopt);
    case ActionKind::FreeIn:
        return Action::free_in(std::move(m), rel.apply(a.subject()),
                               a.object() ? std::optional(rel.apply(*a.object())) : std::nullopt);
    case ActionKind::BoundOut:
        return Action::bound_out(std::move(m), rel.apply(a.subject()), rel.apply(*a.object()));
    case ActionKind::BoundIn:
        return Action::bound_in(std::move(m), rel.apply(a.subject()), rel.apply(*a.object()));
    }
    return a;
}

} // namespace picalc
