#pragma once

#include "picalc/ccs_term.hpp"
#include "picalc/pi_term.hpp"

namespace picalc {

struct Translation {
    Ccs term;
    DefEnv env;  // CCS definitions for the translated agent identifiers
};

/// The compositional translation into CCS_γ (with triggering for strict π).
///
/// `inst` selects how input sums instantiate the received name; anything
/// but the default Spare is a deliberately broken variant kept for
/// regression tests.  Throws SemanticsError on mode violations.
Translation translate_T(const Pi& p, const DefEnv& env, Mode mode, Instantiation inst = Instantiation::Spare);

/// The CCS identifier under which the translation of definition `ident/arity`
/// is stored.
std::string translated_ident(const DefEnv& env, const std::string& ident, std::size_t arity);

/// The handshake encoding: pair actions as empty-match free actions, the
/// input sum ranging over plain public names with a finite-map relabelling,
/// classic parallel composition.  Defined on 0, τ/output/input prefixes, +
/// and |; throws SemanticsError outside that fragment.
Ccs translate_E(const Pi& p);

/// Recomputes every clause of the translation as a context applied to the
/// translations of the immediate subterms and compares.
bool check_compositionality(const Pi& p, const DefEnv& env, Mode mode);

} // namespace picalc
