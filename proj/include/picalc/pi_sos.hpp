#pragma once

#include <string>
#include <vector>

#include "picalc/pi_term.hpp"

namespace picalc {

enum class PiSemantics : unsigned char { Late, Early, LateSymbolic, EarlySymbolic };

struct PiTransition {
    Action action;
    Pi target;
};

/// Transitions of `p`.  Early semantics enumerate free-input objects over
/// `pool`; every other transition is independent of it.  Bound objects are
/// normalized to the least reserved name outside fn(p), and the result is
/// deduplicated up to α-equivalence of targets and sorted.
///
/// Throws SemanticsError for unbound identifiers and for unguarded
/// recursion deeper than the unfolding guard.
std::vector<PiTransition> step_pi(const Pi& p, const DefEnv& env, PiSemantics sem, const NameSet& pool = {});

std::vector<PiTransition> step_late(const Pi& p, const DefEnv& env);
std::vector<PiTransition> step_early(const Pi& p, const DefEnv& env, const NameSet& pool);
std::vector<PiTransition> step_late_symbolic(const Pi& p, const DefEnv& env);
std::vector<PiTransition> step_early_symbolic(const Pi& p, const DefEnv& env, const NameSet& pool);

/// Exactly the transitions labelled with an unguarded τ.  Complete without a
/// pool: communication instantiates inputs with the partner's object.
std::vector<Pi> step_early_tau(const Pi& p, const DefEnv& env);
/// Every silent transition, guarded or not.
std::vector<PiTransition> step_early_symbolic_tau(const Pi& p, const DefEnv& env);

/// Barbs computed from unguarded prefix subjects.
BarbSet barbs_pi(const Pi& p, const DefEnv& env);

/// n(p) plus `extra` reserved names outside it.
NameSet default_pool(const Pi& p, std::size_t extra = 2);

/// Unfolding depth beyond which recursion is reported as unguarded.
inline constexpr int kUnfoldGuard = 64;

// ---- clash-freedom diagnostics

/// Hereditary subprocesses: subterms, closed under adding the bodies of the
/// definitions whose identifiers occur.
std::vector<Pi> h_closure(const Pi& p, const DefEnv& env);
/// Restriction-bound names: every y with (νy)Q in h(p).
NameSet rn(const Pi& p, const DefEnv& env);

struct ClashReport {
    bool clash_free = true;
    std::vector<std::string> violations;
};

ClashReport is_clash_free(const Pi& p, const DefEnv& env);

} // namespace picalc
