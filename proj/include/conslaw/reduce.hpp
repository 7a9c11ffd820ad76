#pragma once

#include <map>
#include <utility>
#include <vector>

#include "conslaw/system.hpp"

namespace conslaw {

/// A solved equation used as a rewrite rule: solved -> rhs, where
/// lhs = coefficient * (solved - rhs).
struct SolvedRule {
  int equation = 0;
  JetVar solved;
  DiffPoly rhs;
  Rational coefficient;
};

/// Rewrite rules for every equation of `sys` that carries a solve hint.
std::vector<SolvedRule> solved_rules(const SystemSpec& sys);

/// Normal form of `p` modulo the system: every solved derivative and each of
/// its total derivatives is eliminated. Throws ReductionFailure when the
/// rewriting does not terminate within `max_order`.
DiffPoly reduce_modulo(const DiffPoly& p, const SystemSpec& sys, int max_order = kDefaultMaxOrder);

/// Normal form plus the cofactors collected while rewriting, such that
///   p = normal_form + sum over (e, K) of cofactor * D_K(F_e)
/// holds as a polynomial identity.
struct ReductionTrace {
  DiffPoly normal_form;
  std::map<std::pair<int, MultiIndex>, DiffPoly> cofactors;
};

ReductionTrace reduce_with_trace(const DiffPoly& p, const SystemSpec& sys,
                                 int max_order = kDefaultMaxOrder);

/// sum of cofactor * D_K(F_e) over a trace.
DiffPoly expand_cofactors(const ReductionTrace& trace, const SystemSpec& sys,
                          int max_order = kDefaultMaxOrder);

/// True if some rule of the system rewrites v.
bool is_reducible(const JetVar& v, const SystemSpec& sys);

}  // namespace conslaw
