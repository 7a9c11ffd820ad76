#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conslaw/diffpoly.hpp"

namespace conslaw {

/// One equation F = 0, optionally solved for a derivative that occurs in F
/// linearly with coefficient +1 or -1.
struct Equation {
  DiffPoly lhs;
  std::optional<JetVar> solved;
  int line = 0;  // source line, 0 when built programmatically
};

/// A PDE system together with the names it is written in.
struct SystemSpec {
  Convention conv;
  std::vector<Equation> equations;

  std::size_t size() const { return equations.size(); }
};

/// A point-symmetry generator xi^i d/dx^i + eta^a d/du^a. All coefficients
/// have jet order 0.
struct Generator {
  std::string name;
  std::vector<DiffPoly> xi;   // one per independent variable
  std::vector<DiffPoly> eta;  // one per dependent variable it acts on
};

/// Checks that `solved` appears in `lhs` as a single linear term with
/// coefficient +-1 and nowhere else. Returns the coefficient.
Rational solved_coefficient(const DiffPoly& lhs, const JetVar& solved);

}  // namespace conslaw
