// Algebraic property suites over random differential polynomials.
#pragma once

#include <functional>
#include <string>

#include "conslaw/reduce.hpp"
#include "conslaw/render.hpp"
#include "conslaw/symmetry.hpp"
#include "support.hpp"

namespace testing {

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string counterexample;
};

inline PropertyResult check_property(const std::string& name, int instances, std::uint64_t seed,
                                     const std::function<std::string(Random&)>& body) {
  PropertyResult out{name};
  Random r(seed);
  for (int n = 0; n < instances; ++n) {
    std::string failure;
    try {
      failure = body(r);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    ++out.instances;
    if (!failure.empty()) {
      if (out.failures++ == 0) out.counterexample = failure;
    }
  }
  return out;
}

inline const Convention& adjoint_conv() {
  static const Convention c = Convention::kp_with_adjoints();
  return c;
}

inline std::string show(const DiffPoly& p) { return conslaw::render_plain(p, adjoint_conv()); }

inline PropertyResult prop_commutation(int n, std::uint64_t seed) {
  return check_property("D_i D_j = D_j D_i", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    const DiffPoly p = r.poly(c);
    const int i = r.integer(0, 2), j = r.integer(0, 2);
    using conslaw::total_derivative;
    if (total_derivative(total_derivative(p, i), j) == total_derivative(total_derivative(p, j), i)) return "";
    return "p = " + show(p);
  });
}

inline PropertyResult prop_leibniz(int n, std::uint64_t seed) {
  return check_property("Leibniz rule", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    const DiffPoly p = r.poly(c), q = r.poly(c);
    const int i = r.integer(0, 2);
    using conslaw::total_derivative;
    if (total_derivative(p * q, i) == total_derivative(p, i) * q + p * total_derivative(q, i)) return "";
    return "p = " + show(p) + ", q = " + show(q);
  });
}

inline PropertyResult prop_euler_divergence(int n, std::uint64_t seed) {
  return check_property("Euler operator annihilates divergences", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    const DiffPoly q = r.poly(c);
    const int i = r.integer(0, 2);
    const DiffPoly d = conslaw::total_derivative(q, i);
    for (int dep = 0; dep < c.num_dependents(); ++dep)
      if (!conslaw::euler(d, dep).is_zero()) return "q = " + show(q) + ", i = " + std::to_string(i);
    return "";
  });
}

inline PropertyResult prop_substitution(int n, std::uint64_t seed) {
  return check_property("substitution commutes with D_i", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    PolyShape target;
    target.max_jet_order = 0;
    target.deps = {0, 1};
    target.max_terms = 3;
    const conslaw::SubstitutionRule rule({{2, r.poly(c, target)}, {3, r.poly(c, target)}});
    const DiffPoly p = r.poly(c);
    const int i = r.integer(0, 2);
    using conslaw::substitute;
    using conslaw::total_derivative;
    if (substitute(total_derivative(p, i), rule) == total_derivative(substitute(p, rule), i)) return "";
    return "p = " + show(p);
  });
}

inline PropertyResult prop_gauge(int n, std::uint64_t seed) {
  return check_property("gauge transform keeps the divergence", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    PolyShape s;
    s.max_jet_order = 2;
    const conslaw::ConservedVector cv{{r.poly(c, s), r.poly(c, s), r.poly(c, s)}};
    const conslaw::GaugeTriple g{r.poly(c, s), r.poly(c, s), r.poly(c, s)};
    if (conslaw::divergence(conslaw::gauge_transform(cv, g)) == conslaw::divergence(cv)) return "";
    return "P = " + show(g.p) + ", Q = " + show(g.q) + ", R = " + show(g.r);
  });
}

inline PropertyResult prop_round_trip(int n, std::uint64_t seed) {
  return check_property("parse(render(p)) = p", n, seed, [](Random& r) -> std::string {
    const auto& c = adjoint_conv();
    PolyShape s;
    s.max_func_order = 6;
    s.max_coord_power = 3;
    s.max_terms = 6;
    s.max_jet_factors = 3;
    const DiffPoly p = r.poly(c, s);
    const std::string once = conslaw::render_plain(p, c);
    const DiffPoly back = conslaw::parse_expression(once, c);
    if (back == p && conslaw::render_plain(back, c) == once) return "";
    return "rendered " + once + " reparsed as " + conslaw::render_plain(back, c);
  });
}

inline PropertyResult prop_reduction_trace(int n, std::uint64_t seed) {
  static const conslaw::SystemSpec sys = kp_system();
  return check_property("traced reduction agrees with the normal form", n, seed,
                        [](Random& r) -> std::string {
                          PolyShape s;
                          s.deps = {0, 1};
                          s.max_jet_order = 2;  // t-derivatives of order 3 reduce past the order bound
                          const DiffPoly p = r.poly(sys.conv, s);
                          const auto trace = conslaw::reduce_with_trace(p, sys);
                          if (trace.normal_form != conslaw::reduce_modulo(p, sys)) return "normal form differs";
                          if (trace.normal_form + conslaw::expand_cofactors(trace, sys) != p)
                            return "cofactors do not reproduce p";
                          return "";
                        });
}

inline PropertyResult prop_concrete(int n, std::uint64_t seed) {
  return check_property("D_i matches differentiation of concrete functions", n, seed,
                        [](Random& r) -> std::string {
                          const auto& c = adjoint_conv();
                          const Concrete k = random_concrete(r, c);
                          const DiffPoly p = r.poly(c);
                          const int i = r.integer(0, 2);
                          if (compose(conslaw::total_derivative(p, i), k) == cdiff(compose(p, k), i)) return "";
                          return "p = " + show(p);
                        });
}

/// Random generator whose coefficients have jet order 0.
inline conslaw::Generator random_generator(Random& r, const Convention& conv) {
  PolyShape s;
  s.max_jet_order = 0;
  s.deps = {0, 1};
  s.max_terms = 3;
  conslaw::Generator g;
  g.name = "random";
  for (int i = 0; i < 3; ++i) g.xi.push_back(r.integer(0, 2) == 0 ? DiffPoly() : r.poly(conv, s));
  for (int a = 0; a < 2; ++a) g.eta.push_back(r.poly(conv, s));
  return g;
}

inline PropertyResult prop_closed_form(int n, std::uint64_t seed) {
  static const conslaw::SystemSpec sys = kp_system();
  static const conslaw::FormalLagrangian fl = conslaw::formal_lagrangian(sys);
  static const conslaw::SubstitutionRule rule = conslaw::parse_substitution("v=u, z=w", fl.system.conv);
  return check_property("general formula equals the KP closed form", n, seed,
                        [](Random& r) -> std::string {
                          const auto gen = random_generator(r, sys.conv);
                          if (conslaw::conserved_vector(fl, gen, rule) ==
                              conslaw::kp_closed_form(conslaw::characteristic(gen)))
                            return "";
                          std::string out = "xi = (";
                          for (const auto& x : gen.xi) out += conslaw::render_plain(x, sys.conv) + "; ";
                          return out + ")";
                        });
}

}  // namespace testing
