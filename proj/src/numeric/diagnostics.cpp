#include "conslaw/numeric/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "conslaw/calculus.hpp"

namespace conslaw::numeric {

namespace {

Assignment<double> point_at(const Grid& g, double time, std::size_t k,
                            const std::map<JetVar, std::vector<double>>& jets,
                            const FunctionValues& params) {
  Assignment<double> a;
  a.coords = {time, g.x(static_cast<int>(k % g.nx())), g.y(static_cast<int>(k / g.nx()))};
  for (const auto& [v, vals] : jets) a.jets[v] = vals[k];
  a.functions = params;
  return a;
}

std::map<JetVar, std::vector<double>> spatial_jets(const Grid& g, const Field& f,
                                                   const std::set<JetVar>& vars) {
  std::map<JetVar, std::vector<double>> out;
  for (const auto& v : vars) {
    if (v.dep > 1)
      throw Unsupported("only u and w are available on the grid; adjoint variables must be "
                        "substituted first");
    out[v] = spatial_derivative(g, f, v.dep, v.multi[1], v.multi[2]);
  }
  return out;
}

}  // namespace

std::map<JetVar, std::vector<double>> jet_values(const Grid& g, const Field& f, const DiffPoly& p) {
  const auto vars = p.jet_vars();
  for (const auto& v : vars)
    if (v.multi[0] != 0)
      throw Unsupported("time derivatives cannot be taken from a single snapshot");
  return spatial_jets(g, f, vars);
}

double density_integral(const Grid& g, const Field& f, const DiffPoly& density,
                        const Convention& conv, const FunctionValues& params) {
  const auto jets = jet_values(g, f, density);
  double sum = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    sum += evaluate(density, point_at(g, f.time, k, jets, params), conv);
  return sum * g.dx() * g.dy();
}

void require_coordinate_free(const ConservedVector& cv, const Convention& conv) {
  for (int c = 0; c < 3; ++c) {
    for (int i = 1; i < 3; ++i) {
      if (cv.c[c].has_coordinate(i))
        throw Unsupported("C" + std::to_string(c + 1) + " depends explicitly on " +
                          conv.independents()[i] +
                          "; its fluxes are not periodic, so the integral of C1 over the "
                          "periodic cell is not a conserved quantity");
    }
  }
}

DiagnosticSeries conservation_drift(const Trajectory& traj, const ConservedVector& cv,
                                    const Convention& conv, const FunctionValues& params) {
  require_coordinate_free(cv, conv);
  if (traj.snapshots.empty()) throw Error("empty trajectory");
  DiagnosticSeries s;
  for (const auto& f : traj.snapshots) {
    s.times.push_back(f.time);
    s.values.push_back(density_integral(traj.grid, f, cv.c[0], conv, params));
  }
  double floor = 0;
  {
    const auto& g = traj.grid;
    const auto& f0 = traj.snapshots.front();
    const auto jets = jet_values(g, f0, cv.c[0]);
    for (std::size_t k = 0; k < g.size(); ++k)
      floor += std::abs(evaluate(cv.c[0], point_at(g, f0.time, k, jets, params), conv));
    floor *= g.dx() * g.dy();
  }
  const double scale = std::max({std::abs(s.values.front()), floor, 1e-300});
  for (double v : s.values) s.drift = std::max(s.drift, std::abs(v - s.values.front()) / scale);
  return s;
}

double divergence_residual(const Trajectory& traj, std::size_t index, const ConservedVector& cv,
                           const Convention& conv, const FunctionValues& params) {
  if (index == 0 || index + 1 >= traj.snapshots.size())
    throw Error("divergence residual needs an interior snapshot");
  const DiffPoly div = divergence(cv);
  const auto& g = traj.grid;
  const auto& prev = traj.snapshots[index - 1];
  const auto& here = traj.snapshots[index];
  const auto& next = traj.snapshots[index + 1];
  const double h = next.time - prev.time;

  std::set<JetVar> spatial, timed;
  for (const auto& v : div.jet_vars()) {
    if (v.multi[0] == 0) spatial.insert(v);
    else if (v.multi[0] == 1) timed.insert(v);
    else throw Unsupported("second time derivatives are not supported by the residual check");
  }
  auto jets = spatial_jets(g, here, spatial);
  for (const auto& v : timed) {
    const JetVar base{v.dep, {0, v.multi[1], v.multi[2]}};
    const auto a = spatial_jets(g, next, {base}).at(base);
    const auto b = spatial_jets(g, prev, {base}).at(base);
    std::vector<double> d(g.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (a[k] - b[k]) / h;
    jets[v] = std::move(d);
  }
  double worst = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    worst = std::max(worst, std::abs(evaluate(div, point_at(g, here.time, k, jets, params), conv)));
  return worst;
}

PointCheck random_point_check(const DiffPoly& lhs, const DiffPoly& rhs, const Convention& conv,
                              int trials, std::uint64_t seed) {
  std::set<JetVar> jets = lhs.jet_vars();
  for (const auto& v : rhs.jet_vars()) jets.insert(v);
  std::set<FuncSym> funcs = lhs.function_symbols();
  for (const auto& f : rhs.function_symbols()) funcs.insert(f);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  std::uniform_real_distribution<double> real(-2, 2);
  auto rational = [&] {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };

  PointCheck out;
  const DiffPoly diff = lhs - rhs;
  for (int n = 0; n < trials; ++n) {
    Assignment<Rational> a;
    for (auto& c : a.coords) c = rational();
    for (const auto& v : jets) a.jets[v] = rational();
    for (const auto& f : funcs) a.functions[f] = rational();
    Rational d = abs(evaluate(diff, a, conv));
    if (d > out.rational_max) out.rational_max = d;
    ++out.rational_trials;
  }
  for (int n = 0; n < trials; ++n) {
    Assignment<double> a;
    for (auto& c : a.coords) c = real(rng);
    for (const auto& v : jets) a.jets[v] = real(rng);
    for (const auto& f : funcs) a.functions[f] = real(rng);
    const double l = evaluate(lhs, a, conv), r = evaluate(rhs, a, conv);
    out.float_max = std::max(out.float_max, std::abs(l - r) / (1 + std::abs(l)));
    ++out.float_trials;
  }
  return out;
}

}  // namespace conslaw::numeric
