#pragma once

#include <cstdint>
#include <string>

#include "conslaw/numeric/kp_solver.hpp"

namespace conslaw::numeric {

/// Everything `simulate` needs. Defaults are the desk-scale run.
struct SimulationSpec {
  int nx = 64;
  int ny = 64;
  double lx = 8 * M_PI;
  double ly = 8 * M_PI;
  SolverConfig solver;
  std::uint64_t seed = 1;
  double amplitude = 0.2;
  int modes = 4;

  Grid grid() const { return Grid(nx, ny, lx, ly); }
};

/// Reads flat `key = value` lines (a TOML subset: no tables, no arrays).
/// Keys: nx ny lx ly dt t_end dealias integrator nonlinear snapshot_every
/// seed amplitude modes. Values may be numbers, true/false, quoted strings,
/// or the expression `<number>*pi`. Throws ParseError with the line number.
SimulationSpec parse_sim_config(const std::string& text);

}  // namespace conslaw::numeric
