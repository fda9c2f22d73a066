#pragma once

#include <optional>
#include <vector>

#include "picalc/ccs_term.hpp"

namespace picalc {

struct CcsTransition {
    Action action;
    Ccs target;
};

/// γ(M x!y, N v?y) = [x=v]MN τ, in either argument order; undefined for
/// any other pair, in particular when the objects differ.
std::optional<Action> gamma(const Action& a, const Action& b);

/// Classic handshake: x!y with x?y (or object-less x! with x?) into τ.
std::optional<Action> handshake(const Action& a, const Action& b);

/// All transitions.  Inputs of infinite sums are enumerated with observed
/// objects drawn from `pool`; every other transition, and every τ, is
/// independent of the pool.  Deduplicated and sorted by (label, state key).
std::vector<CcsTransition> step_ccs(const Ccs& e, const DefEnv& env, const NameSet& pool = {});
std::vector<CcsTransition> step_gamma_visible(const Ccs& e, const DefEnv& env, const NameSet& pool);

/// The complete set of τ-successors, computed without a pool.
std::vector<Ccs> step_gamma_tau(const Ccs& e, const DefEnv& env);

/// Every silent transition, with or without a matching sequence.
std::vector<CcsTransition> step_gamma_silent(const Ccs& e, const DefEnv& env);

/// Reference engine: each input sum is expanded eagerly into one branch per
/// name of `pool` before anything else happens.  Only as complete as the
/// pool; used to cross-check the demand-driven engine.
std::vector<CcsTransition> step_gamma_eager(const Ccs& e, const DefEnv& env, const NameSet& pool);

BarbSet barbs_ccs(const Ccs& e, const DefEnv& env);

/// Names of the term and of every definition it can reach.
NameSet reachable_names(const Ccs& e, const DefEnv& env);
/// Relabellings of the term and of every definition it can reach.
std::vector<Relabelling> reachable_relabellings(const Ccs& e, const DefEnv& env);

} // namespace picalc
