#pragma once

#include <string>
#include <utility>
#include <vector>

#include "picalc/action.hpp"
#include "picalc/names.hpp"

namespace picalc {

/// A name substitution used as a relabelling operator.
///
/// Every relabelling is total: names outside the declared domain are mapped
/// to themselves.  The builtin families are
///
///  - `TagL`, `TagR`, `TagE`: prepend a tag to unprimed private names and
///    strip one prime from primed private names whose tag word does not
///    already start with the tag;
///  - `PNu(y)`: `y -> p`, `p' -> y`, any other private name is tagged `e`;
///  - `SubS(ys / xs)`: `x_i -> y_i`, `s_i -> x_i` for `i <= n` and
///    `s_i -> s_{i-n}` above, the surjective form of `{ys/xs}`;
///  - `Shift(b, k)`: `b<i> -> b<i+k>` on public names of that shape.
///
/// `FiniteMap` is an arbitrary finite map with pairwise distinct keys.
class Relabelling {
public:
    enum class Kind : unsigned char { FiniteMap, TagL, TagR, TagE, PNu, SubS, Shift };
    using Pairs = std::vector<std::pair<Name, Name>>;

    /// The empty finite map.
    Relabelling() = default;

    /// Throws std::invalid_argument on a repeated key.
    static Relabelling finite_map(Pairs pairs);
    static Relabelling tag_l();
    static Relabelling tag_r();
    static Relabelling tag_e();
    static Relabelling pnu(Name y);
    /// `[targets / sources]`; sources must be distinct plain public names.
    static Relabelling subs(std::vector<Name> targets, std::vector<Name> sources);
    static Relabelling shift(std::string base, int step = 1);

    Kind kind() const { return kind_; }
    /// FiniteMap pairs, or SubS pairs (source, target).
    const Pairs& pairs() const { return pairs_; }
    const Name& restricted() const { return y_; }
    const std::string& base() const { return base_; }
    int step() const { return step_; }

    Name apply(const Name& x) const;
    /// Every x with apply(x) = w, sorted.  Finite for all kinds.
    std::vector<Name> preimage(const Name& w) const;

    /// Injectivity of the total extension.
    bool injective() const { return injective_; }
    /// True when apply is the identity on every name.
    bool is_identity() const;

    /// Text form, as written between the brackets of `E[...]`.
    std::string str() const;

    auto operator<=>(const Relabelling&) const = default;
    bool operator==(const Relabelling&) const = default;

private:
    Relabelling(Kind kind) : kind_(kind) {}
    void compute_injective();

    Kind kind_ = Kind::FiniteMap;
    Pairs pairs_;
    Name y_;
    std::string base_;
    int step_ = 1;
    bool injective_ = true;
};

/// Tag prepended by TagL/TagR/TagE.
char tag_letter(Relabelling::Kind kind);

MatchSeq apply_to_matches(const Relabelling& rel, const MatchSeq& m);
Action apply_to_action(const Relabelling& rel, const Action& a);

} // namespace picalc
