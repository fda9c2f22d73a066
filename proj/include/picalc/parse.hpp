#pragma once

#include <string_view>

#include "picalc/ccs_term.hpp"
#include "picalc/errors.hpp"
#include "picalc/pi_term.hpp"

namespace picalc {

struct PiProgram {
    Pi term;
    DefEnv env;
};

struct CcsProgram {
    Ccs term;
    DefEnv env;
};

/// Parses a π term.  Lines of `text` containing `:=` are agent definitions
/// `A(x1,...,xn) := P`; the remaining lines form the term.  `defs_text`
/// holds further definitions, one per line, with `#` comments.
///
/// Throws SyntaxError for malformed text and SemanticsError for arity
/// mismatches, unbound identifiers, redefinitions and mode violations.
PiProgram parse_pi(std::string_view text, Mode mode, std::string_view defs_text = {});

/// Parses a CCS_γ term with definitions `A := E`.
CcsProgram parse_ccs(std::string_view text, std::string_view defs_text = {});

Name parse_name(std::string_view text);
Action parse_action(std::string_view text);
Relabelling parse_relabelling(std::string_view text);

/// Checks every identifier of `term` and of the definitions against `env`.
void check_pi(const Pi& term, const DefEnv& env, Mode mode);
void check_ccs(const Ccs& term, const DefEnv& env);

} // namespace picalc
