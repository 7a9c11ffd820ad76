#pragma once

#include <map>
#include <optional>
#include <span>

#include "conslaw/diffpoly.hpp"

namespace conslaw {

/// D_i p: chain rule over jet variables, explicit coordinates and function
/// symbols (F^(k) -> F^(k+1) when i is the argument of F).
DiffPoly total_derivative(const DiffPoly& p, int i, int max_order = kDefaultMaxOrder);

/// D_K p = D_t^a D_x^b D_y^c p.
DiffPoly total_derivative(const DiffPoly& p, const MultiIndex& k,
                          int max_order = kDefaultMaxOrder);

/// Ordinary partial derivative with respect to the stored jet variable v.
DiffPoly partial(const DiffPoly& p, const JetVar& v);

/// Partial derivative with respect to u^dep indexed by an ordered tuple of
/// independent variables, divided by the number of distinct orderings of that
/// tuple. Summing over all ordered tuples recovers the symmetric derivative,
/// which is what index-summation formulas over u_{ij}, u_{ijk} expect.
DiffPoly partial_jet(const DiffPoly& p, int dep, std::span<const int> ordered_indices);

/// Variational derivative: sum over J of (-1)^|J| D_J (dp/du^dep_J).
DiffPoly euler(const DiffPoly& p, int dep, int max_order = kDefaultMaxOrder);

/// Replacement of dependent variables by jet-order-0 expressions, e.g.
/// v -> u, z -> w. Derivatives v_J become D_J(target).
class SubstitutionRule {
 public:
  SubstitutionRule() = default;
  /// Throws Error when a target has positive jet order or mentions a
  /// substituted variable.
  explicit SubstitutionRule(std::map<int, DiffPoly> targets);

  const std::map<int, DiffPoly>& targets() const { return targets_; }
  bool substitutes(int dep) const { return targets_.count(dep) != 0; }

 private:
  std::map<int, DiffPoly> targets_;
};

DiffPoly substitute(const DiffPoly& p, const SubstitutionRule& rule,
                    int max_order = kDefaultMaxOrder);

/// Replaces every F^(k) of function `func` by the k-th derivative of `value`
/// with respect to the function's argument. `value` must not contain jets.
DiffPoly specialize_function(const DiffPoly& p, int func, int arg, const DiffPoly& value);

/// Values for every symbol a polynomial may mention.
template <typename T>
struct Assignment {
  std::array<std::optional<T>, kMaxIndependents> coords;
  std::map<JetVar, T> jets;
  std::map<FuncSym, T> functions;
};

/// Exact evaluation. Throws MissingSymbol naming the first unassigned symbol.
Rational evaluate(const DiffPoly& p, const Assignment<Rational>& point, const Convention& conv);
/// Floating-point evaluation.
double evaluate(const DiffPoly& p, const Assignment<double>& point, const Convention& conv);

}  // namespace conslaw
