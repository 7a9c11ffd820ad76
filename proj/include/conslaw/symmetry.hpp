#pragma once

#include <string_view>
#include <vector>

#include "conslaw/system.hpp"

namespace conslaw {

/// X_f, X_g or X_h of the KP system, with f, g, h kept symbolic. `kind` is
/// "f", "g" or "h". Needs independents t, x, y, dependents u, w and the
/// matching `func` declaration in `conv`.
Generator builtin_kp_generator(std::string_view kind, const Convention& conv);

/// W^a = eta^a - xi^j u^a_j, one entry per dependent variable of the generator.
std::vector<DiffPoly> characteristic(const Generator& gen);

/// a*X + b*Y, coefficientwise.
Generator combine(const Rational& a, const Generator& x, const Rational& b, const Generator& y);

/// Prolonged action in characteristic form:
///   X(p) = xi^i D_i(p) + sum over (a, J) of D_J(W^a) dp/du^a_J.
DiffPoly apply_prolonged(const Generator& gen, const DiffPoly& p, int max_order = kDefaultMaxOrder);

struct SymmetryReport {
  std::vector<DiffPoly> prolonged;  // X(F) per equation
  std::vector<DiffPoly> residuals;  // reduced modulo the system
  bool pass = false;
};

/// Infinitesimal invariance test: X(F) must reduce to zero for every equation.
SymmetryReport check_symmetry(const Generator& gen, const SystemSpec& sys);

}  // namespace conslaw
