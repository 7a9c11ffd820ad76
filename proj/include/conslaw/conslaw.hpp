#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "conslaw/calculus.hpp"
#include "conslaw/render.hpp"
#include "conslaw/selfadjoint.hpp"
#include "conslaw/system.hpp"

namespace conslaw {

/// (C1, C2, C3) paired with (t, x, y): D_t C1 + D_x C2 + D_y C3 = 0 on solutions.
struct ConservedVector {
  std::array<DiffPoly, 3> c;
  std::string generator;
  std::string substitution;
  std::vector<std::string> history;

  bool operator==(const ConservedVector& o) const { return c == o.c; }
};

/// Trivial-part potentials. See gauge_transform.
struct GaugeTriple {
  DiffPoly p, q, r;
};

/// Conserved vector of a symmetry for a system with formal Lagrangian `fl`
/// (third-order truncation of the index-summation formula), with adjoint
/// variables then eliminated by `rule`. The xi^i L term is dropped unless
/// `keep_xi_lagrangian`; L vanishes on solutions. Throws Unsupported when the
/// Lagrangian has jet order above 3.
ConservedVector conserved_vector(const FormalLagrangian& fl, const Generator& gen,
                                 const SubstitutionRule& rule, bool keep_xi_lagrangian = false);

/// Closed form specialised to KP with v = u, z = w, given the characteristics
/// (W1, W2) over dependents u (index 0) and w (index 1):
///   C1 = u W1
///   C2 = -(u^2 + u_xx) W1 + w W2 + u_x D_x W1 - u D_x^2 W1
///   C3 = -w W1 - u W2
ConservedVector kp_closed_form(const std::vector<DiffPoly>& w);

/// Every component reduced modulo the system.
ConservedVector reduce_vector(const ConservedVector& cv, const SystemSpec& sys);

/// (C1 - D_x P - D_y Q, C2 + D_t P - D_y R, C3 + D_t Q + D_x R). Leaves the
/// divergence unchanged identically.
ConservedVector gauge_transform(const ConservedVector& cv, const GaugeTriple& g);

/// D_t C1 + D_x C2 + D_y C3.
DiffPoly divergence(const ConservedVector& cv);

/// Result of integrating by parts modulo a system:
///   input = remainder + sum over d of D_d(potentials[d])  (modulo the system).
struct IntegrationByParts {
  DiffPoly remainder;
  std::array<DiffPoly, 3> potentials;
};

/// Repeatedly rewrites terms that are linear in a derivative V = k D_d(L),
/// either directly or through a two-term linear equation of the system, as a
/// total d-derivative plus a remainder lower in term order. Only directions
/// listed in `directions` are used.
IntegrationByParts integrate_by_parts(const DiffPoly& p, const SystemSpec& sys,
                                      const std::vector<int>& directions);

struct SimplifiedVector {
  ConservedVector vector;
  GaugeTriple gauge;
  int sign = 1;
};

/// Reduces the vector, moves total x- and y-derivatives of the density into
/// (P, Q), total y-derivatives of the x-flux into R, and scales by +-1 so the
/// first density term is positive. The result equals
/// sign * reduce(gauge_transform(reduce(cv), gauge)).
SimplifiedVector simplify_density(const ConservedVector& cv, const SystemSpec& sys);

struct VerificationReport {
  DiffPoly divergence;
  DiffPoly residual;
  /// Cofactor of D_K(F_e), keyed by (equation e, K). When `pass`, the
  /// divergence equals the sum of cofactor * D_K(F_e) exactly.
  std::map<std::pair<int, MultiIndex>, DiffPoly> multipliers;
  bool pass = false;

  /// Multiplier of F_e itself (K = 0), zero when absent.
  DiffPoly multiplier(int equation) const;
  /// True when no cofactor involves a derivative of an equation.
  bool multipliers_are_plain() const;
};

VerificationReport verify_divergence(const ConservedVector& cv, const SystemSpec& sys);

/// `C1 = ...` lines, a LaTeX align body, or a JSON array of
/// {"component", "expr", "provenance"} objects.
std::string render_vector(const ConservedVector& cv, const Convention& conv, Format format);

/// Reads the JSON array form written by render_vector.
ConservedVector parse_vector_json(const std::string& text, const Convention& conv);

}  // namespace conslaw
