#pragma once

#include <string>
#include <vector>

#include "conslaw/calculus.hpp"
#include "conslaw/system.hpp"

namespace conslaw {

/// L = sum over equations of (adjoint variable) * F.
struct FormalLagrangian {
  SystemSpec system;              // the base system with adjoint variables appended
  int num_original = 0;           // dependent variables of the base system
  std::vector<int> adjoint_deps;  // adjoint variable of each equation
  DiffPoly lagrangian;
};

/// v, z for the first two equations, then v3, v4, ...
std::vector<std::string> default_adjoint_names(std::size_t count);

/// Throws Error when an adjoint name is already taken.
FormalLagrangian formal_lagrangian(const SystemSpec& sys,
                                   std::vector<std::string> adjoint_names = {});

struct AdjointSystem {
  /// dL/du^a (variational derivative) for each original dependent variable.
  std::vector<DiffPoly> raw;
  /// raw[a] times sign[a], chosen so the derivative that mirrors the base
  /// system's solve hint has coefficient +1. Written over the extended names.
  SystemSpec oriented;
  std::vector<int> signs;
};

AdjointSystem adjoint_system(const FormalLagrangian& fl);

struct SelfAdjointnessReport {
  SubstitutionRule substitution;
  AdjointSystem adjoint;
  std::vector<DiffPoly> substituted;  // oriented adjoint equations after substitution
  std::vector<DiffPoly> residuals;    // substituted equations reduced modulo the system
  bool self_adjoint = false;
};

/// Substitutes `rule` into the adjoint system and reduces modulo the base
/// system. `rule` is expressed over fl.system.conv and must cover every
/// adjoint variable.
SelfAdjointnessReport check_selfadjointness(const FormalLagrangian& fl,
                                            const SubstitutionRule& rule);
/// Same, with the default adjoint names.
SelfAdjointnessReport check_selfadjointness(const SystemSpec& sys, const SubstitutionRule& rule);

}  // namespace conslaw
