#include "picalc/action.hpp"

namespace picalc {

MatchSeq::MatchSeq(std::vector<Entry> entries) {
    entries_.reserve(entries.size());
    for (auto& e : entries)
        if (e.first != e.second)
            entries_.push_back(std::move(e));
}

NameSet MatchSeq::names() const {
    NameSet out;
    for (const auto& [x, y] : entries_) {
        out.insert(x);
        out.insert(y);
    }
    return out;
}

bool MatchSeq::mentions(const Name& n) const {
    for (const auto& [x, y] : entries_)
        if (x == n || y == n)
            return true;
    return false;
}

MatchSeq MatchSeq::then(const MatchSeq& other) const {
    std::vector<Entry> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return MatchSeq(std::move(all));
}

std::string MatchSeq::str() const {
    std::string out;
    for (const auto& [x, y] : entries_)
        out += "[" + x.str() + "=" + y.str() + "]";
    return out;
}

MatchSeq prepend_match(const MatchSeq& m, const Name& x, const Name& y) {
    if (x == y)
        return m;
    std::vector<MatchSeq::Entry> all{{x, y}};
    all.insert(all.end(), m.entries().begin(), m.entries().end());
    return MatchSeq(std::move(all));
}

Action Action::silent(MatchSeq m) {
    Action a;
    a.kind_ = ActionKind::Silent;
    a.m_ = std::move(m);
    return a;
}

Action Action::free_out(MatchSeq m, Name subject, std::optional<Name> object) {
    Action a;
    a.kind_ = ActionKind::FreeOut;
    a.m_ = std::move(m);
    a.subject_ = std::move(subject);
    a.object_ = std::move(object);
    return a;
}

Action Action::bound_out(MatchSeq m, Name subject, Name object) {
    Action a = free_out(std::move(m), std::move(subject), std::move(object));
    a.kind_ = ActionKind::BoundOut;
    return a;
}

Action Action::free_in(MatchSeq m, Name subject, std::optional<Name> object) {
    Action a = free_out(std::move(m), std::move(subject), std::move(object));
    a.kind_ = ActionKind::FreeIn;
    return a;
}

Action Action::bound_in(MatchSeq m, Name subject, Name object) {
    Action a = free_out(std::move(m), std::move(subject), std::move(object));
    a.kind_ = ActionKind::BoundIn;
    return a;
}

NameSet Action::free_names() const {
    if (is_silent())
        return {};
    NameSet out = m_.names();
    out.insert(subject_);
    if (!is_bound() && object_)
        out.insert(*object_);
    return out;
}

NameSet Action::bound_names() const {
    if (is_bound() && object_)
        return {*object_};
    return {};
}

NameSet Action::names() const {
    NameSet out = free_names();
    if (is_bound() && object_)
        out.insert(*object_);
    return out;
}

std::optional<Barb> Action::observe() const {
    if (is_silent() || !m_.empty() || !subject_.is_observable())
        return std::nullopt;
    return Barb{subject_, is_output()};
}

Action Action::with_matches(MatchSeq m) const {
    Action a = *this;
    a.m_ = std::move(m);
    return a;
}

Action Action::with_object(std::optional<Name> object) const {
    Action a = *this;
    a.object_ = std::move(object);
    return a;
}

std::string Action::str() const {
    std::string out = m_.str();
    switch (kind_) {
    case ActionKind::Silent:
        return out + "tau";
    case ActionKind::FreeOut:
        out += subject_.str() + "!";
        break;
    case ActionKind::FreeIn:
        out += subject_.str() + "?";
        break;
    case ActionKind::BoundOut:
        return out + subject_.str() + "!(" + (object_ ? object_->str() : "") + ")";
    case ActionKind::BoundIn:
        return out + subject_.str() + "(" + (object_ ? object_->str() : "") + ")";
    }
    if (object_)
        out += object_->str();
    return out;
}

std::ostream& operator<<(std::ostream& os, const Action& a) { return os << a.str(); }

} // namespace picalc
