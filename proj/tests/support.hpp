// Shared helpers for the test suites: random generators and an independent
// oracle that evaluates differential polynomials on concrete polynomial
// functions u(t,x,y), w(t,x,y), f(t).
#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "conslaw/calculus.hpp"
#include "conslaw/conslaw.hpp"
#include "conslaw/parser.hpp"

#ifndef CONSLAW_CORPUS_DIR
#define CONSLAW_CORPUS_DIR "corpus"
#endif

namespace testing {

using conslaw::Convention;
using conslaw::DiffPoly;
using conslaw::JetVar;
using conslaw::Monomial;
using conslaw::Rational;

inline std::string corpus_path(const std::string& rel) { return std::string(CONSLAW_CORPUS_DIR) + "/" + rel; }

inline conslaw::SystemSpec kp_system() {
  return conslaw::parse_system(conslaw::read_file(corpus_path("kp.pde")));
}

inline DiffPoly P(const std::string& text, const Convention& conv) {
  return conslaw::parse_expression(text, conv);
}

// ---------------------------------------------------------------------------
// Random generators

struct PolyShape {
  int max_terms = 4;
  int max_jet_order = 3;
  int max_jet_factors = 2;
  int max_coord_power = 2;
  int max_func_order = 2;
  bool coordinates = true;
  bool functions = true;
  std::vector<int> deps;  // empty: every dependent of the convention
};

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational() {
    int n = 0;
    while (n == 0) n = integer(-5, 5);
    Rational r(n, integer(1, 4));
    r.canonicalize();
    return r;
  }

  conslaw::MultiIndex multi(int max_order, int dims = 3) {
    conslaw::MultiIndex m{};
    const int ord = integer(0, max_order);
    for (int k = 0; k < ord; ++k) ++m[integer(0, dims - 1)];
    return m;
  }

  DiffPoly poly(const Convention& conv, const PolyShape& s = {}) {
    std::vector<int> deps = s.deps;
    if (deps.empty())
      for (int d = 0; d < conv.num_dependents(); ++d) deps.push_back(d);
    DiffPoly out;
    const int terms = integer(1, s.max_terms);
    for (int k = 0; k < terms; ++k) {
      Monomial m;
      if (s.coordinates)
        for (int i = 0; i < conv.num_independents(); ++i)
          if (integer(0, 2) == 0) m = m * Monomial::coordinate(i, integer(1, s.max_coord_power));
      if (s.functions && !conv.functions().empty() && integer(0, 2) == 0) {
        const int fn = integer(0, static_cast<int>(conv.functions().size()) - 1);
        m = m * Monomial::function({fn, conv.functions()[fn].arg, integer(0, s.max_func_order)});
      }
      const int factors = integer(0, s.max_jet_factors);
      for (int j = 0; j < factors && !deps.empty(); ++j) {
        const int dep = deps[integer(0, static_cast<int>(deps.size()) - 1)];
        m = m * Monomial::jet({dep, multi(s.max_jet_order, conv.num_independents())});
      }
      out.add_term(m, rational());
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Concrete-function oracle. Polynomials in (t, x, y) with their own
// differentiation, unrelated to the engine's total derivative.

using Exponents = std::array<int, 3>;
using CPoly = std::map<Exponents, Rational>;

inline void add_to(CPoly& p, const Exponents& e, const Rational& c) {
  Rational& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

inline CPoly cmul(const CPoly& a, const CPoly& b) {
  CPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_to(out, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return out;
}

inline CPoly cdiff(const CPoly& p, int i) {
  CPoly out;
  for (const auto& [e, c] : p) {
    if (e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    add_to(out, f, c * e[i]);
  }
  return out;
}

inline CPoly cderiv(CPoly p, const conslaw::MultiIndex& k) {
  for (int i = 0; i < 3; ++i)
    for (int n = 0; n < k[i]; ++n) p = cdiff(p, i);
  return p;
}

struct Concrete {
  std::vector<CPoly> deps;   // one per dependent variable
  std::vector<CPoly> funcs;  // one per function, in its argument only
};

inline CPoly random_cpoly(Random& r, int max_degree, int terms, int only_var = -1) {
  CPoly p;
  for (int k = 0; k < terms; ++k) {
    Exponents e{};
    if (only_var >= 0) {
      e[only_var] = r.integer(0, max_degree);
    } else {
      for (int i = 0; i < 3; ++i) e[i] = r.integer(0, max_degree);
    }
    add_to(p, e, r.rational());
  }
  return p;
}

inline Concrete random_concrete(Random& r, const Convention& conv) {
  Concrete c;
  for (int d = 0; d < conv.num_dependents(); ++d) c.deps.push_back(random_cpoly(r, 3, 4));
  for (const auto& f : conv.functions()) c.funcs.push_back(random_cpoly(r, 5, 3, f.arg));
  return c;
}

inline CPoly compose(const DiffPoly& p, const Concrete& c) {
  CPoly out;
  for (const auto& [m, coef] : p.terms()) {
    CPoly term{{Exponents{m.coords()[0], m.coords()[1], m.coords()[2]}, coef}};
    for (const auto& [f, e] : m.functions()) {
      conslaw::MultiIndex k{};
      k[f.arg] = f.order;
      const CPoly val = cderiv(c.funcs.at(f.func), k);
      for (int n = 0; n < e; ++n) term = cmul(term, val);
    }
    for (const auto& [v, e] : m.jets()) {
      const CPoly val = cderiv(c.deps.at(v.dep), v.multi);
      for (int n = 0; n < e; ++n) term = cmul(term, val);
    }
    for (const auto& [ex, cc] : term) add_to(out, ex, cc);
  }
  return out;
}

}  // namespace testing
