#pragma once

#include <memory>
#include <string>
#include <vector>

#include "picalc/action.hpp"
#include "picalc/names.hpp"
#include "picalc/pi_term.hpp"
#include "picalc/relabelling.hpp"

namespace picalc {

/// How an input sum builds the branch for a received name z.
enum class Instantiation : unsigned char {
    Spare,  // body[z/y] with the surjective substitution relabelling
    Plain,  // body[map: y->z]
};

/// One node of a CCS / CCS_γ term with triggering.
///
/// `InputSum` stands for the infinite choice Σ_z M x?z.(body[z/y]); its
/// branches are produced on demand and never materialized.
struct CcsNode {
    enum class Kind : unsigned char { Nil, Prefix, Sum, InputSum, Par, Restrict, Relabel, Trigger, Ide };

    Kind kind = Kind::Nil;
    Action action;               // Prefix
    std::vector<Ccs> children;   // Sum: all; Par: two; other unary nodes: one
    MatchSeq m;                  // InputSum guard
    Name x;                      // InputSum subject, Trigger left
    Name y;                      // InputSum binder, Trigger right
    Instantiation inst = Instantiation::Spare;
    bool public_only = false;    // InputSum over plain public names only
    bool gamma = true;           // Par: `||` communicates through γ, `|` by handshake
    NameSet restricted;          // Restrict
    Relabelling rel;             // Relabel
    std::string ident;           // Ide

    const Ccs& child() const { return children.front(); }
};

namespace ccs {

Ccs nil();
Ccs prefix(Action a, Ccs cont);
Ccs sum(std::vector<Ccs> branches);
Ccs sum(Ccs e, Ccs f);
Ccs input_sum(MatchSeq m, Name x, Name y, Ccs body, Instantiation inst = Instantiation::Spare,
              bool public_only = false);
Ccs par(Ccs e, Ccs f, bool gamma = true);
Ccs restrict(Ccs e, NameSet channels);
Ccs relabel(Ccs e, Relabelling rel);
Ccs trigger(Name x, Name y, Ccs e);
Ccs ide(std::string ident);

} // namespace ccs

bool same(const Ccs& e, const Ccs& f);
std::string print(const Ccs& e);
std::size_t size(const Ccs& e);

/// Every name mentioned by the term, not looking through identifiers.
NameSet all_names(const Ccs& e);

/// Relabellings occurring in the term.
std::vector<Relabelling> relabellings(const Ccs& e);

/// Collapses identity relabellings and flattens, sorts and deduplicates sums.
/// Relabelling stacks are kept as they are.
Ccs normalize(const Ccs& e);

/// Canonical state key.
std::string ccs_key(const Ccs& e);

} // namespace picalc
