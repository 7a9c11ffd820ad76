#include "conslaw/conslaw.hpp"

#include <optional>

#include "conslaw/error.hpp"
#include "conslaw/parser.hpp"
#include "conslaw/reduce.hpp"
#include "conslaw/symmetry.hpp"
#include "json.hpp"

namespace conslaw {

namespace {

constexpr int kTime = 0;
constexpr int kX = 1;
constexpr int kY = 2;
constexpr int kMaxIbpSteps = 10000;

void require_three_independents(const Convention& conv) {
  if (conv.num_independents() != 3) {
    throw Unsupported("conserved vectors need exactly three independent variables");
  }
}

std::string render_rule(const SubstitutionRule& rule, const Convention& conv) {
  std::string out;
  for (const auto& [dep, target] : rule.targets()) {
    if (!out.empty()) out += ", ";
    out += conv.dependents()[dep] + "=" + render_plain(target, conv);
  }
  return out;
}

}  // namespace

ConservedVector conserved_vector(const FormalLagrangian& fl, const Generator& gen,
                                 const SubstitutionRule& rule, bool keep_xi_lagrangian) {
  const Convention& conv = fl.system.conv;
  require_three_independents(conv);
  const DiffPoly& lag = fl.lagrangian;
  if (lag.jet_order() > 3) {
    throw Unsupported("formal Lagrangian of jet order " + std::to_string(lag.jet_order()) +
                      " is above the third-order formula");
  }
  if (static_cast<int>(gen.eta.size()) != fl.num_original || gen.xi.size() != 3) {
    throw Error("generator does not match the system's variables");
  }
  std::vector<DiffPoly> w = characteristic(gen);
  constexpr int n = 3;

  ConservedVector cv;
  cv.generator = gen.name;
  cv.substitution = render_rule(rule, conv);
  for (int i = 0; i < n; ++i) {
    DiffPoly ci;
    if (keep_xi_lagrangian) ci += gen.xi[i] * lag;
    for (int a = 0; a < fl.num_original; ++a) {
      const DiffPoly& wa = w[a];
      DiffPoly first = partial_jet(lag, a, std::array{i});
      for (int j = 0; j < n; ++j) {
        DiffPoly second = partial_jet(lag, a, std::array{i, j});
        DiffPoly second_bracket = second;
        first -= total_derivative(second, j);
        for (int k = 0; k < n; ++k) {
          DiffPoly third = partial_jet(lag, a, std::array{i, j, k});
          if (third.is_zero()) continue;
          first += total_derivative(total_derivative(third, j), k);
          second_bracket -= total_derivative(third, k);
          ci += total_derivative(total_derivative(wa, j), k) * third;
        }
        if (!second_bracket.is_zero()) ci += total_derivative(wa, j) * second_bracket;
      }
      ci += wa * first;
    }
    cv.c[i] = substitute(ci, rule);
  }
  if (keep_xi_lagrangian) cv.history.push_back("xi*L kept");
  return cv;
}

ConservedVector kp_closed_form(const std::vector<DiffPoly>& w) {
  if (w.size() != 2) throw Error("KP closed form needs two characteristics");
  const DiffPoly u = DiffPoly::jet(0);
  const DiffPoly om = DiffPoly::jet(1);
  const DiffPoly u_x = DiffPoly::jet(0, {0, 1, 0});
  const DiffPoly u_xx = DiffPoly::jet(0, {0, 2, 0});
  DiffPoly dw1 = total_derivative(w[0], kX);
  DiffPoly ddw1 = total_derivative(dw1, kX);

  ConservedVector cv;
  cv.generator = "closed form";
  cv.substitution = "v=u, z=w";
  cv.c[0] = u * w[0];
  cv.c[1] = -(u.pow(2) + u_xx) * w[0] + om * w[1] + u_x * dw1 - u * ddw1;
  cv.c[2] = -om * w[0] - u * w[1];
  return cv;
}

ConservedVector reduce_vector(const ConservedVector& cv, const SystemSpec& sys) {
  ConservedVector out = cv;
  for (auto& c : out.c) c = reduce_modulo(c, sys);
  return out;
}

ConservedVector gauge_transform(const ConservedVector& cv, const GaugeTriple& g) {
  ConservedVector out = cv;
  out.c[0] -= total_derivative(g.p, kX) + total_derivative(g.q, kY);
  out.c[1] += total_derivative(g.p, kTime) - total_derivative(g.r, kY);
  out.c[2] += total_derivative(g.q, kTime) + total_derivative(g.r, kX);
  return out;
}

DiffPoly divergence(const ConservedVector& cv) {
  return total_derivative(cv.c[0], kTime) + total_derivative(cv.c[1], kX) +
         total_derivative(cv.c[2], kY);
}

namespace {

// V = k * D_d(L) modulo the system.
struct Antiderivative {
  int direction;
  JetVar lower;
  Rational factor;
};

// Equation a*s + b*r = 0 between two single derivatives.
struct LinearLink {
  JetVar solved;
  Rational solved_coeff;
  JetVar other;
  Rational other_coeff;
};

std::vector<LinearLink> linear_links(const SystemSpec& sys) {
  std::vector<LinearLink> links;
  for (const auto& eq : sys.equations) {
    if (!eq.solved || eq.lhs.size() != 2) continue;
    std::vector<std::pair<JetVar, Rational>> vars;
    for (const auto& [m, c] : eq.lhs.terms()) {
      if (!m.coefficient_part().is_one() || m.jets().size() != 1 || m.jets()[0].second != 1) break;
      vars.push_back({m.jets()[0].first, c});
    }
    if (vars.size() != 2) continue;
    if (vars[1].first == *eq.solved) std::swap(vars[0], vars[1]);
    links.push_back({vars[0].first, vars[0].second, vars[1].first, vars[1].second});
  }
  return links;
}

std::vector<Antiderivative> antiderivatives(const JetVar& v, const SystemSpec& sys,
                                            const std::vector<LinearLink>& links,
                                            const std::vector<int>& directions) {
  std::vector<Antiderivative> out;
  for (int d : directions) {
    if (v.multi[d] == 0) continue;
    JetVar lower = v;
    --lower.multi[d];
    if (!is_reducible(lower, sys)) out.push_back({d, lower, Rational(1)});
  }
  for (const auto& link : links) {
    if (link.other.dep != v.dep || !dominates(v.multi, link.other.multi)) continue;
    JetVar image = link.solved;
    for (int i = 0; i < kMaxIndependents; ++i) image.multi[i] += v.multi[i] - link.other.multi[i];
    for (int d : directions) {
      if (image.multi[d] == 0) continue;
      JetVar lower = image;
      --lower.multi[d];
      if (is_reducible(lower, sys)) continue;
      out.push_back({d, lower, -link.solved_coeff / link.other_coeff});
    }
  }
  return out;
}

}  // namespace

IntegrationByParts integrate_by_parts(const DiffPoly& p, const SystemSpec& sys,
                                      const std::vector<int>& directions) {
  IntegrationByParts out;
  out.remainder = reduce_modulo(p, sys);
  const auto links = linear_links(sys);

  for (int step = 0; step < kMaxIbpSteps; ++step) {
    // Find one admissible rewrite, then apply it once the term map is no
    // longer being iterated.
    std::optional<Monomial> target;
    Rational target_coef;
    DiffPoly potential, remainder;
    int direction = 0;
    for (auto it = out.remainder.terms().rbegin(); it != out.remainder.terms().rend() && !target; ++it) {
      const Monomial& m = it->first;
      const Rational& c = it->second;
      for (auto vit = m.jets().rbegin(); vit != m.jets().rend() && !target; ++vit) {
        if (vit->second != 1) continue;
        for (const auto& anti : antiderivatives(vit->first, sys, links, directions)) {
          int n = m.exponent(anti.lower);
          DiffPoly rest = DiffPoly::term(m.divided_by(vit->first).divided_by(anti.lower, n));
          DiffPoly lower_pow = DiffPoly::jet(anti.lower).pow(n + 1);
          Rational scale = anti.factor * c / (n + 1);
          DiffPoly rem = reduce_modulo(total_derivative(rest, anti.direction) * lower_pow * (-scale), sys);
          bool smaller = true;
          for (const auto& [rm, rc] : rem.terms()) {
            if (!(rm < m)) smaller = false;
          }
          if (!smaller) continue;
          target = m;
          target_coef = c;
          potential = rest * lower_pow * scale;
          remainder = std::move(rem);
          direction = anti.direction;
          break;
        }
      }
    }
    if (!target) break;
    out.remainder.add_term(*target, -target_coef);
    out.remainder += remainder;
    out.potentials[direction] += potential;
  }
  return out;
}

SimplifiedVector simplify_density(const ConservedVector& cv, const SystemSpec& sys) {
  require_three_independents(sys.conv);
  ConservedVector base = reduce_vector(cv, sys);

  SimplifiedVector out;
  IntegrationByParts density = integrate_by_parts(base.c[0], sys, {kX, kY});
  out.gauge.p = density.potentials[kX];
  out.gauge.q = density.potentials[kY];
  ConservedVector partial_step = reduce_vector(gauge_transform(base, out.gauge), sys);
  IntegrationByParts flux = integrate_by_parts(partial_step.c[1], sys, {kY});
  out.gauge.r = flux.potentials[kY];

  out.vector = reduce_vector(gauge_transform(base, out.gauge), sys);
  for (const auto& c : out.vector.c) {
    if (!c.is_zero()) {
      out.sign = c.terms().begin()->second > 0 ? 1 : -1;
      break;
    }
  }
  if (out.sign < 0) {
    for (auto& c : out.vector.c) c = -c;
  }
  out.vector.history.push_back(std::string("simplified, sign ") + (out.sign > 0 ? "+1" : "-1"));
  return out;
}

DiffPoly VerificationReport::multiplier(int equation) const {
  auto it = multipliers.find({equation, MultiIndex{}});
  return it == multipliers.end() ? DiffPoly() : it->second;
}

bool VerificationReport::multipliers_are_plain() const {
  for (const auto& [key, m] : multipliers) {
    if (order(key.second) != 0) return false;
  }
  return true;
}

VerificationReport verify_divergence(const ConservedVector& cv, const SystemSpec& sys) {
  VerificationReport report;
  report.divergence = divergence(cv);
  ReductionTrace trace = reduce_with_trace(report.divergence, sys);
  report.residual = std::move(trace.normal_form);
  report.multipliers = std::move(trace.cofactors);
  report.pass = report.residual.is_zero();
  return report;
}

std::string render_vector(const ConservedVector& cv, const Convention& conv, Format format) {
  static const char* names[] = {"C1", "C2", "C3"};
  std::string provenance = cv.generator;
  if (!cv.substitution.empty()) provenance += "; substitution " + cv.substitution;
  for (const auto& h : cv.history) provenance += "; " + h;

  std::string out;
  switch (format) {
    case Format::Plain:
      for (int i = 0; i < 3; ++i) out += std::string(names[i]) + " = " + render_plain(cv.c[i], conv) + "\n";
      return out;
    case Format::Latex:
      for (int i = 0; i < 3; ++i) {
        out += "C^{" + std::to_string(i + 1) + "} &= " + render_latex(cv.c[i], conv);
        out += i < 2 ? " \\\\\n" : "\n";
      }
      return out;
    case Format::Json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (int i = 0; i < 3; ++i) {
        nlohmann::ordered_json entry;
        entry["component"] = names[i];
        entry["expr"] = render_plain(cv.c[i], conv);
        entry["provenance"] = provenance;
        arr.push_back(entry);
      }
      return arr.dump(2) + "\n";
    }
  }
  return out;
}

ConservedVector parse_vector_json(const std::string& text, const Convention& conv) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid vector JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error("vector JSON must be an array of components");
  ConservedVector cv;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("component") || !entry.contains("expr")) {
      throw Error("each vector entry needs 'component' and 'expr'");
    }
    std::string name = entry["component"].get<std::string>();
    int idx = name == "C1" ? 0 : name == "C2" ? 1 : name == "C3" ? 2 : -1;
    if (idx < 0) throw Error("unknown component '" + name + "'");
    cv.c[idx] = parse_expression(entry["expr"].get<std::string>(), conv);
    if (entry.contains("provenance") && cv.generator.empty()) {
      cv.generator = entry["provenance"].get<std::string>();
    }
  }
  return cv;
}

}  // namespace conslaw
