#include "conslaw/selfadjoint.hpp"

#include "conslaw/error.hpp"
#include "conslaw/reduce.hpp"

namespace conslaw {

std::vector<std::string> default_adjoint_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0) {
      names.push_back("v");
    } else if (i == 1) {
      names.push_back("z");
    } else {
      names.push_back("v" + std::to_string(i + 1));
    }
  }
  return names;
}

FormalLagrangian formal_lagrangian(const SystemSpec& sys, std::vector<std::string> adjoint_names) {
  if (adjoint_names.empty()) adjoint_names = default_adjoint_names(sys.size());
  if (adjoint_names.size() != sys.size()) {
    throw Error("need one adjoint variable per equation");
  }
  FormalLagrangian fl;
  fl.system = sys;
  fl.num_original = sys.conv.num_dependents();
  for (std::size_t e = 0; e < sys.size(); ++e) {
    int dep = fl.system.conv.add_dependent(adjoint_names[e]);
    fl.adjoint_deps.push_back(dep);
    fl.lagrangian += DiffPoly::jet(dep) * sys.equations[e].lhs;
  }
  return fl;
}

AdjointSystem adjoint_system(const FormalLagrangian& fl) {
  AdjointSystem adj;
  adj.oriented.conv = fl.system.conv;
  for (int a = 0; a < fl.num_original; ++a) {
    DiffPoly raw = euler(fl.lagrangian, a);

    // The base equation solved for a derivative of u^a names the mirrored
    // derivative of its adjoint variable.
    std::optional<JetVar> hint;
    for (std::size_t e = 0; e < fl.system.size(); ++e) {
      const auto& solved = fl.system.equations[e].solved;
      if (solved && solved->dep == a) {
        hint = JetVar{fl.adjoint_deps[e], solved->multi};
        break;
      }
    }
    int sign = 1;
    Rational lead = hint ? raw.coefficient(Monomial::jet(*hint)) : Rational(0);
    if (lead != 0) {
      sign = lead > 0 ? 1 : -1;
    } else if (!raw.is_zero() && raw.terms().begin()->second < 0) {
      sign = -1;
    }
    Equation eq;
    eq.lhs = sign > 0 ? raw : -raw;
    if (lead == 1 || lead == -1) {
      try {
        solved_coefficient(eq.lhs, *hint);
        eq.solved = hint;
      } catch (const Error&) {
      }
    }
    adj.raw.push_back(std::move(raw));
    adj.signs.push_back(sign);
    adj.oriented.equations.push_back(std::move(eq));
  }
  return adj;
}

SelfAdjointnessReport check_selfadjointness(const FormalLagrangian& fl,
                                            const SubstitutionRule& rule) {
  for (std::size_t e = 0; e < fl.adjoint_deps.size(); ++e) {
    if (!rule.substitutes(fl.adjoint_deps[e])) {
      throw Error("substitution does not cover adjoint variable '" +
                  fl.system.conv.dependents()[fl.adjoint_deps[e]] + "'");
    }
  }
  SelfAdjointnessReport report;
  report.substitution = rule;
  report.adjoint = adjoint_system(fl);
  report.self_adjoint = true;
  for (const auto& eq : report.adjoint.oriented.equations) {
    DiffPoly sub = substitute(eq.lhs, rule);
    DiffPoly residual = reduce_modulo(sub, fl.system);
    if (!residual.is_zero()) report.self_adjoint = false;
    report.substituted.push_back(std::move(sub));
    report.residuals.push_back(std::move(residual));
  }
  return report;
}

SelfAdjointnessReport check_selfadjointness(const SystemSpec& sys, const SubstitutionRule& rule) {
  return check_selfadjointness(formal_lagrangian(sys), rule);
}

}  // namespace conslaw
