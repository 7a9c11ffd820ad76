#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "conslaw/conslaw.hpp"
#include "conslaw/convention.hpp"
#include "conslaw/diffpoly.hpp"
#include "conslaw/numeric/kp_solver.hpp"

namespace conslaw::numeric {

/// Numeric values for arbitrary-function symbols that survive specialization.
using FunctionValues = std::map<FuncSym, double>;

struct DiagnosticSeries {
  std::vector<double> times;
  std::vector<double> values;
  double drift = 0;
};

/// Values of every jet variable of `p` (dep 0 = u, dep 1 = w, no t-derivatives)
/// at each grid point of `field`. Throws Unsupported for anything else.
std::map<JetVar, std::vector<double>> jet_values(const Grid& grid, const Field& field,
                                                 const DiffPoly& p);

/// Trapezoid-rule integral of `density` over the periodic cell.
double density_integral(const Grid& grid, const Field& field, const DiffPoly& density,
                        const Convention& conv, const FunctionValues& params = {});

/// Throws Unsupported if any component mentions x or y explicitly.
void require_coordinate_free(const ConservedVector& cv, const Convention& conv);

/// Series of the integral of C^1 over the snapshots and its relative drift.
/// The floor in the relative drift is the integral of |C^1| at the first
/// snapshot, so densities with vanishing integral still get a scale.
DiagnosticSeries conservation_drift(const Trajectory& traj, const ConservedVector& cv,
                                    const Convention& conv, const FunctionValues& params = {});

/// max |D_t C^1 + D_x C^2 + D_y C^3| at interior snapshot `index`. Time
/// derivatives come from centered differences of neighbouring snapshots.
double divergence_residual(const Trajectory& traj, std::size_t index, const ConservedVector& cv,
                           const Convention& conv, const FunctionValues& params = {});

struct PointCheck {
  int rational_trials = 0;
  int float_trials = 0;
  Rational rational_max;  // exact max |lhs - rhs|
  double float_max = 0;   // max |lhs - rhs| / (1 + |lhs|)
  bool exact() const { return rational_max == 0; }
};

/// Evaluates both sides at random points in exact and floating arithmetic.
PointCheck random_point_check(const DiffPoly& lhs, const DiffPoly& rhs, const Convention& conv,
                              int trials = 100, std::uint64_t seed = 1);

}  // namespace conslaw::numeric
