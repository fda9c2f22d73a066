#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "picalc/names.hpp"

namespace picalc {

/// A matching sequence `[x1=y1][x2=y2]...`.  Trivial matches `[x=x]` are
/// dropped on construction, so every entry relates two distinct names.
class MatchSeq {
public:
    using Entry = std::pair<Name, Name>;

    MatchSeq() = default;
    explicit MatchSeq(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    NameSet names() const;
    bool mentions(const Name& n) const;

    /// Concatenation `this . other`.
    MatchSeq then(const MatchSeq& other) const;

    std::string str() const;

    auto operator<=>(const MatchSeq&) const = default;
    bool operator==(const MatchSeq&) const = default;

private:
    std::vector<Entry> entries_;
};

/// `[x=y]m`, or `m` unchanged when x = y.
MatchSeq prepend_match(const MatchSeq& m, const Name& x, const Name& y);

enum class ActionKind : unsigned char { Silent, FreeOut, BoundOut, FreeIn, BoundIn };

/// An observable barb: a public channel name, with `co` set for outputs.
struct Barb {
    Name name;
    bool co = false;

    std::string str() const { return (co ? "'" : "") + name.str(); }
    auto operator<=>(const Barb&) const = default;
    bool operator==(const Barb&) const = default;
};

using BarbSet = std::set<Barb>;

/// A transition label: `M tau`, `M x!y`, `M x!(y)`, `M x?y`, `M x(y)`.
///
/// Classic CCS labels without an object are represented by a visible action
/// whose object is absent.
class Action {
public:
    Action() = default;

    static Action silent(MatchSeq m = {});
    static Action free_out(MatchSeq m, Name subject, std::optional<Name> object);
    static Action bound_out(MatchSeq m, Name subject, Name object);
    static Action free_in(MatchSeq m, Name subject, std::optional<Name> object);
    static Action bound_in(MatchSeq m, Name subject, Name object);

    ActionKind kind() const { return kind_; }
    const MatchSeq& matches() const { return m_; }
    const Name& subject() const { return subject_; }
    const std::optional<Name>& object() const { return object_; }

    bool is_silent() const { return kind_ == ActionKind::Silent; }
    bool is_tau() const { return is_silent() && m_.empty(); }
    bool is_output() const { return kind_ == ActionKind::FreeOut || kind_ == ActionKind::BoundOut; }
    bool is_input() const { return kind_ == ActionKind::FreeIn || kind_ == ActionKind::BoundIn; }
    bool is_bound() const { return kind_ == ActionKind::BoundOut || kind_ == ActionKind::BoundIn; }

    NameSet free_names() const;
    NameSet bound_names() const;
    NameSet names() const;

    /// The observation O(a): defined only for unguarded visible actions on
    /// observable subjects.
    std::optional<Barb> observe() const;

    Action with_matches(MatchSeq m) const;
    Action with_object(std::optional<Name> object) const;

    std::string str() const;

    auto operator<=>(const Action&) const = default;
    bool operator==(const Action&) const = default;

private:
    ActionKind kind_ = ActionKind::Silent;
    MatchSeq m_;
    Name subject_;
    std::optional<Name> object_;
};

std::ostream& operator<<(std::ostream& os, const Action& a);

} // namespace picalc
