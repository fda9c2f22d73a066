#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "picalc/action.hpp"
#include "picalc/names.hpp"

namespace picalc {

/// Strict π allows the match operator; π with implicit matching (im) drops it
/// in favour of matching sequences on prefixes.
enum class Mode : unsigned char { Strict, Im };

struct PiNode;
using Pi = std::shared_ptr<const PiNode>;

enum class PrefixKind : unsigned char { Tau, Out, In };

/// One node of a π-calculus term.  Terms are immutable and shared.
struct PiNode {
    enum class Kind : unsigned char { Nil, Prefix, Nu, Match, Par, Sum, Ide };

    Kind kind = Kind::Nil;
    PrefixKind prefix = PrefixKind::Tau;
    MatchSeq m;              // Prefix guard
    Name x;                  // Prefix subject, Match left
    Name y;                  // Prefix object / input binder, Nu binder, Match right
    Pi left;                 // continuation, Nu/Match body, left operand
    Pi right;                // right operand
    std::string ident;       // Ide
    std::vector<Name> args;  // Ide
};

namespace pi {

Pi nil();
Pi tau(MatchSeq m, Pi cont);
Pi tau(Pi cont);
Pi out(MatchSeq m, Name x, Name y, Pi cont);
Pi out(Name x, Name y, Pi cont);
Pi in(MatchSeq m, Name x, Name y, Pi cont);
Pi in(Name x, Name y, Pi cont);
Pi nu(Name y, Pi body);
Pi match(Name x, Name y, Pi body);
Pi par(Pi p, Pi q);
Pi sum(Pi p, Pi q);
Pi ide(std::string ident, std::vector<Name> args);

} // namespace pi

/// `A(x1,...,xn) := body`
struct PiDefinition {
    std::string ident;
    std::vector<Name> params;
    Pi body;
};

struct CcsNode;
using Ccs = std::shared_ptr<const CcsNode>;

/// Agent definitions of one parsed file, shared by both calculi.
struct DefEnv {
    std::map<std::pair<std::string, std::size_t>, PiDefinition> pi;
    std::map<std::string, Ccs> ccs;

    /// Throws SemanticsError when the identifier is not defined.
    const PiDefinition& pi_def(const std::string& ident, std::size_t arity) const;
    const Ccs& ccs_def(const std::string& ident) const;
};

using Subst = std::map<Name, Name>;

bool same(const Pi& p, const Pi& q);
std::string print(const Pi& p);
std::size_t size(const Pi& p);

NameSet free_names(const Pi& p);
NameSet bound_names(const Pi& p);
NameSet all_names(const Pi& p);

/// Simultaneous capture-avoiding substitution.  A bound name y is kept when
/// y is outside dom(σ) ∪ range(σ); otherwise it is renamed to the least
/// reserved name outside fn((νy)P) ∪ dom(σ) ∪ range(σ).
Pi substitute(const Pi& p, const Subst& sigma);

/// Exchanges two names everywhere, bound occurrences included.
Pi swap_names(const Pi& p, const Name& a, const Name& b);

/// Renames binders, in traversal order, to the reserved names `_0, _1, ...`
/// skipping the free names of `p`.
Pi alpha_canonical(const Pi& p);
bool alpha_eq(const Pi& p, const Pi& q);

/// Canonical state key.
std::string alpha_key(const Pi& p);

} // namespace picalc
