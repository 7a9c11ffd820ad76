#include "conslaw/system.hpp"

#include "conslaw/error.hpp"

namespace conslaw {

Rational solved_coefficient(const DiffPoly& lhs, const JetVar& solved) {
  Rational c = lhs.coefficient(Monomial::jet(solved));
  if (c != 1 && c != -1) {
    throw Error("solved derivative must appear with coefficient +1 or -1");
  }
  int occurrences = 0;
  for (const auto& [m, coef] : lhs.terms()) {
    if (m.exponent(solved) > 0) ++occurrences;
  }
  if (occurrences != 1) throw Error("solved derivative must appear linearly in a single term");
  return c;
}

}  // namespace conslaw
