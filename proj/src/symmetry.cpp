#include "conslaw/symmetry.hpp"

#include <array>
#include <string>

#include "conslaw/calculus.hpp"
#include "conslaw/error.hpp"
#include "conslaw/parser.hpp"
#include "conslaw/reduce.hpp"

namespace conslaw {

namespace {

struct BuiltinText {
  const char* func;
  std::array<const char*, 3> xi;   // t, x, y
  std::array<const char*, 2> eta;  // u, w
};

constexpr BuiltinText kBuiltins[] = {
    {"f",
     {"3*f", "f'*x + (1/2)*f''*y^2", "2*f'*y"},
     {"-(2*f'*u + f''*x + (1/2)*f'''*y^2)",
      "-(3*f'*w + f''*y*u + f'''*x*y + (1/6)*f''''*y^3)"}},
    {"g",
     {"0", "g'*y", "2*g"},
     {"-g''*y", "-(g'*u + g''*x + (1/2)*g'''*y^2)"}},
    {"h",
     {"0", "h", "0"},
     {"-h'", "-h''*y"}},
};

}  // namespace

Generator builtin_kp_generator(std::string_view kind, const Convention& conv) {
  const BuiltinText* spec = nullptr;
  for (const auto& b : kBuiltins) {
    if (kind == b.func) spec = &b;
  }
  if (!spec) throw Error("unknown builtin generator '" + std::string(kind) + "' (f, g or h)");

  const std::array<const char*, 3> indep = {"t", "x", "y"};
  for (int i = 0; i < 3; ++i) {
    if (conv.find_independent(indep[i]) != i) {
      throw Error("builtin generators need independent variables t, x, y in that order");
    }
  }
  if (conv.find_dependent("u") != 0 || conv.find_dependent("w") != 1) {
    throw Error("builtin generators need dependent variables u, w in that order");
  }
  auto fn = conv.find_function(spec->func);
  if (!fn || conv.functions()[*fn].arg != 0) {
    throw Error(std::string("builtin generator needs 'func ") + spec->func + "(t)'");
  }

  Generator gen;
  gen.name = std::string("X_") + spec->func;
  for (const char* text : spec->xi) gen.xi.push_back(parse_expression(text, conv));
  for (const char* text : spec->eta) gen.eta.push_back(parse_expression(text, conv));
  return gen;
}

std::vector<DiffPoly> characteristic(const Generator& gen) {
  std::vector<DiffPoly> w;
  for (std::size_t a = 0; a < gen.eta.size(); ++a) {
    DiffPoly wa = gen.eta[a];
    for (std::size_t j = 0; j < gen.xi.size(); ++j) {
      wa -= gen.xi[j] * DiffPoly::jet(static_cast<int>(a), unit_index(static_cast<int>(j)));
    }
    w.push_back(std::move(wa));
  }
  return w;
}

Generator combine(const Rational& a, const Generator& x, const Rational& b, const Generator& y) {
  if (x.xi.size() != y.xi.size() || x.eta.size() != y.eta.size()) {
    throw Error("generators act on different variables");
  }
  Generator out;
  out.name = "combination";
  for (std::size_t i = 0; i < x.xi.size(); ++i) out.xi.push_back(a * x.xi[i] + b * y.xi[i]);
  for (std::size_t i = 0; i < x.eta.size(); ++i) out.eta.push_back(a * x.eta[i] + b * y.eta[i]);
  return out;
}

DiffPoly apply_prolonged(const Generator& gen, const DiffPoly& p, int max_order) {
  DiffPoly out;
  for (std::size_t i = 0; i < gen.xi.size(); ++i) {
    if (!gen.xi[i].is_zero()) {
      out += gen.xi[i] * total_derivative(p, static_cast<int>(i), max_order);
    }
  }
  std::vector<DiffPoly> w = characteristic(gen);
  for (const JetVar& v : p.jet_vars()) {
    if (v.dep >= static_cast<int>(w.size())) continue;
    out += total_derivative(w[v.dep], v.multi, max_order) * partial(p, v);
  }
  return out;
}

SymmetryReport check_symmetry(const Generator& gen, const SystemSpec& sys) {
  SymmetryReport report;
  report.pass = true;
  for (const auto& eq : sys.equations) {
    DiffPoly xf = apply_prolonged(gen, eq.lhs);
    DiffPoly residual = reduce_modulo(xf, sys);
    if (!residual.is_zero()) report.pass = false;
    report.prolonged.push_back(std::move(xf));
    report.residuals.push_back(std::move(residual));
  }
  return report;
}

}  // namespace conslaw
