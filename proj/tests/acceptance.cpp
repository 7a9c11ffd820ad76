// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "conslaw/corpus.hpp"
#include "conslaw/numeric/diagnostics.hpp"
#include "properties.hpp"

using namespace conslaw;
using testing::P;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::filesystem::path kRoot = CONSLAW_CORPUS_DIR;

struct Kp {
  SystemSpec sys = testing::kp_system();
  FormalLagrangian fl = formal_lagrangian(sys);
  SubstitutionRule rule = parse_substitution("v=u, z=w", fl.system.conv);
};

std::string eng(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

corpus::CaseResult golden(const std::string& name) {
  for (const auto& gc : corpus::load_cases(kRoot / "golden"))
    if (gc.name == name) return corpus::run_case(gc, kRoot);
  throw Error("missing golden case " + name);
}

ConservedVector verbatim(const corpus::GoldenCase& gc, const Convention& conv) {
  ConservedVector cv;
  for (int i = 0; i < 3; ++i) cv.c[i] = P(gc.expected.at("C" + std::to_string(i + 1)), conv);
  return cv;
}

corpus::GoldenCase load(const std::string& name) {
  return corpus::parse_case(read_file((kRoot / "golden" / (name + ".case")).string()), name);
}

Outcome adjoint_reproduction() {
  Kp kp;
  const auto adj = adjoint_system(kp.fl);
  const auto& conv = kp.fl.system.conv;
  const bool ok = adj.oriented.equations.size() == 2 &&
                  adj.oriented.equations[0].lhs == P("v_t - u*v_x - v_xxx - z_y", conv) &&
                  adj.oriented.equations[1].lhs == P("z_x - v_y", conv);
  return {ok, "E1 = " + render_plain(adj.oriented.equations[0].lhs, conv)};
}

Outcome selfadjointness() {
  Kp kp;
  const auto rep = check_selfadjointness(kp.fl, kp.rule);
  const bool ok = rep.self_adjoint &&
                  rep.substituted[0] == P("u_t - u*u_x - u_xxx - w_y", kp.sys.conv) &&
                  rep.substituted[1] == P("w_x - u_y", kp.sys.conv);
  return {ok, std::string("verdict ") + (rep.self_adjoint ? "yes" : "no")};
}

Outcome symmetries() {
  Kp kp;
  bool ok = true;
  std::string detail;
  for (const char* k : {"f", "g", "h"}) {
    const auto rep = check_symmetry(builtin_kp_generator(k, kp.sys.conv), kp.sys);
    bool zero = rep.pass;
    for (const auto& r : rep.residuals) zero = zero && r.is_zero();
    ok = ok && zero;
    detail += std::string("X_") + k + (zero ? " ok " : " FAILED ");
  }
  return {ok, detail};
}

Outcome closed_form() {
  Kp kp;
  int equal = 0;
  for (const char* k : {"f", "g", "h"}) {
    const auto gen = builtin_kp_generator(k, kp.sys.conv);
    equal += conserved_vector(kp.fl, gen, kp.rule) == kp_closed_form(characteristic(gen));
  }
  const auto random = testing::prop_closed_form(50, 2024);
  const bool ok = equal == 3 && random.instances == 50 && random.failures == 0;
  return {ok, std::to_string(equal) + "/3 built-in, " + std::to_string(random.instances - random.failures) +
                  "/50 random generators equal"};
}

Outcome golden_vectors() {
  Kp kp;
  // X_f through the recorded gauge, exact.
  const auto p1 = golden("prop1");
  bool ok = p1.pass;
  std::string detail = std::string("prop1 exact ") + (p1.pass ? "ok" : "FAILED");
  // X_g and X_h through simplify_density, up to one sign.
  for (const char* name : {"prop2", "prop3"}) {
    const auto gc = load(name);
    const auto gen = corpus::load_generator(gc.generator, kp.sys.conv, kRoot);
    const auto s = simplify_density(conserved_vector(kp.fl, gen, kp.rule), kp.sys);
    const auto cmp = corpus::compare_vectors(s.vector, verbatim(gc, kp.sys.conv), corpus::Mode::UpToSign, kp.sys);
    ok = ok && cmp.pass;
    detail += std::string("; ") + name + (cmp.pass ? " ok" : " FAILED") + " (normalization sign " +
              std::to_string(s.sign) + ", match sign " + std::to_string(cmp.sign) + ", overall " +
              std::to_string(s.sign * cmp.sign) + ")";
  }
  return {ok, detail};
}

Outcome divergence_identity() {
  Kp kp;
  bool ok = true;
  std::string detail;
  for (const char* name : {"divergence_prop1", "divergence_prop2", "divergence_prop3"}) {
    const auto gc = load(name);
    const auto rep = verify_divergence(verbatim(gc, kp.sys.conv), kp.sys);
    const bool zero = rep.pass && rep.residual.is_zero();
    ok = ok && zero;
    detail += std::string(name + 11) + (zero ? " zero residual; " : " NONZERO residual; ");
  }
  // Multipliers of the X_f vector against the two expected factors.
  const auto gc = load("divergence_prop1");
  const auto rep = verify_divergence(verbatim(gc, kp.sys.conv), kp.sys);
  int sign = 0;
  bool mult = rep.multipliers_are_plain();
  for (int e = 0; e < 2; ++e) {
    const DiffPoly want = P(gc.expected.at("M" + std::to_string(e + 1)), kp.sys.conv);
    const DiffPoly got = rep.multiplier(e);
    const int s = got == want ? 1 : got == -want ? -1 : 0;
    if (s == 0 || (sign != 0 && s != sign)) mult = false;
    sign = s;
  }
  ok = ok && mult;
  detail += std::string("multipliers ") + (mult ? "match" : "DIFFER") + " with orientation sign " + std::to_string(sign);
  return {ok, detail};
}

Outcome euler_golden() {
  const auto sys = parse_system(read_file((kRoot / "kp_potential.pde").string()));
  const DiffPoly lag = P("-(1/2)*phi_x*phi_t + (1/6)*phi_x^3 + (1/2)*phi_y^2 - (1/2)*phi_xx^2", sys.conv);
  const DiffPoly e = euler(lag, 0);
  const bool ok = e == P("phi_xt - phi_x*phi_xx - phi_xxxx - phi_yy", sys.conv) && e == sys.equations[0].lhs;
  return {ok, "E = " + render_plain(e, sys.conv)};
}

Outcome property_suites() {
  const std::vector<testing::PropertyResult> suites = {
      testing::prop_commutation(200, 1),  testing::prop_leibniz(200, 2),
      testing::prop_euler_divergence(200, 3), testing::prop_substitution(200, 4),
      testing::prop_gauge(200, 5),        testing::prop_round_trip(200, 6)};
  bool ok = true;
  int total = 0;
  std::string detail;
  for (const auto& s : suites) {
    ok = ok && s.failures == 0 && s.instances >= 200;
    total += s.instances;
    if (s.failures) detail += s.name + " failed: " + s.counterexample + "; ";
  }
  return {ok, detail + std::to_string(suites.size()) + " suites, " + std::to_string(total) + " instances"};
}

// Drift below this is accumulated rounding, not time-step error.
constexpr double kRoundoffDrift = 1e-11;

Outcome numeric_conservation() {
  Kp kp;
  auto density = [&](const char* gen) {
    auto cv = simplify_density(conserved_vector(kp.fl, builtin_kp_generator(gen, kp.sys.conv), kp.rule), kp.sys).vector;
    const int fn = *kp.sys.conv.find_function(gen);
    for (auto& c : cv.c) c = specialize_function(c, fn, 0, P("t", kp.sys.conv));
    return cv;
  };
  const auto mass = density("h");
  const auto l2 = density("f");
  const numeric::Grid grid(64, 64, 8 * M_PI, 8 * M_PI);
  const auto init = numeric::random_initial_field(grid, 7);
  std::vector<std::array<double, 2>> drift;
  for (double dt : {1e-3, 5e-4}) {
    numeric::SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    cfg.snapshot_every = static_cast<int>(std::lround(0.01 / dt));
    const auto traj = numeric::solve_kp(grid, cfg, init);
    drift.push_back({numeric::conservation_drift(traj, mass, kp.sys.conv).drift,
                     numeric::conservation_drift(traj, l2, kp.sys.conv).drift});
  }
  bool ok = mass.c[0] == P("u", kp.sys.conv) && l2.c[0] == P("(1/2)*u^2", kp.sys.conv);
  std::string detail;
  const char* names[] = {"mass", "L2"};
  for (int d = 0; d < 2; ++d) {
    const double a = drift[0][d], b = drift[1][d];
    const bool below = a < 1e-6 && b < 1e-6;
    const bool halving = a <= kRoundoffDrift || (b > 0 && a / b >= 8);
    ok = ok && below && halving;
    detail += std::string(names[d]) + " drift " + eng(a) + " (dt/2: " + eng(b) + ", " +
              (a <= kRoundoffDrift ? "round-off" : "ratio " + eng(a / b)) + "); ";
  }
  return {ok, detail};
}

Outcome pointwise_identity() {
  Kp kp;
  const auto& conv = kp.sys.conv;
  const auto gc = load("divergence_prop1");
  const auto cv = verbatim(gc, conv);
  const DiffPoly rhs = P(gc.expected.at("identity"), conv);
  const auto base = numeric::random_point_check(divergence(cv), rhs, conv, 100, 31);
  bool ok = base.exact() && base.rational_trials >= 100 && base.float_trials >= 100;

  // Every single-coefficient mutation, on both sides of the identity.
  int mutations = 0, caught = 0;
  for (int comp = 0; comp < 4; ++comp) {
    const DiffPoly& src = comp < 3 ? cv.c[comp] : rhs;
    for (const auto& [mono, coef] : src.terms()) {
      DiffPoly mutated = src;
      mutated.add_term(mono, 1);
      DiffPoly lhs = divergence(cv), right = rhs;
      if (comp < 3) {
        ConservedVector m = cv;
        m.c[comp] = mutated;
        lhs = divergence(m);
      } else {
        right = mutated;
      }
      ++mutations;
      caught += !numeric::random_point_check(lhs, right, conv, 100, 97 + mutations).exact();
    }
  }
  ok = ok && caught == mutations;
  return {ok, std::to_string(base.rational_trials) + " rational trials max error " + base.rational_max.get_str() +
                  ", float max " + eng(base.float_max) + "; " + std::to_string(caught) + "/" +
                  std::to_string(mutations) + " mutations caught"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "adjoint reproduction", 1, adjoint_reproduction},
      {2, "self-adjointness with v = u, z = w", 1, selfadjointness},
      {3, "symmetry verification of X_f, X_g, X_h", 10, symmetries},
      {4, "general formula equals closed form", 30, closed_form},
      {5, "golden conserved vectors of X_f, X_g, X_h", 10, golden_vectors},
      {6, "divergence identity and multipliers", 10, divergence_identity},
      {7, "Euler operator on the potential Lagrangian", 1, euler_golden},
      {8, "algebraic property suites", 60, property_suites},
      {9, "numeric conservation of mass and L2", 120, numeric_conservation},
      {10, "pointwise identity check with mutations", 10, pointwise_identity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << eng(secs)
              << " s of " << c.budget_seconds << " s" << (in_time ? "" : ", OVER BUDGET") << "] " << o.detail
              << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
