#include "conslaw/reduce.hpp"

#include <set>

#include "conslaw/calculus.hpp"
#include "conslaw/error.hpp"

namespace conslaw {

namespace {

constexpr int kMaxRounds = 10000;

MultiIndex difference(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex d{};
  for (int i = 0; i < kMaxIndependents; ++i) d[i] = a[i] - b[i];
  return d;
}

const SolvedRule* find_rule(const std::vector<SolvedRule>& rules, const JetVar& v) {
  for (const auto& r : rules) {
    if (r.solved.dep == v.dep && dominates(v.multi, r.solved.multi)) return &r;
  }
  return nullptr;
}

class Reducer {
 public:
  Reducer(const SystemSpec& sys, int max_order) : rules_(solved_rules(sys)), max_order_(max_order) {}

  const std::vector<SolvedRule>& rules() const { return rules_; }

  const DiffPoly& shifted_rhs(const SolvedRule& rule, const MultiIndex& k) {
    auto key = std::make_pair(rule.equation, k);
    auto it = rhs_cache_.find(key);
    if (it != rhs_cache_.end()) return it->second;
    DiffPoly d;
    try {
      d = total_derivative(rule.rhs, k, max_order_);
    } catch (const OrderOverflow& e) {
      throw ReductionFailure(std::string("reduction does not terminate within the order bound: ") +
                             e.what());
    }
    return rhs_cache_.emplace(key, std::move(d)).first->second;
  }

  const DiffPoly& normal_var(const JetVar& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    const SolvedRule* rule = find_rule(rules_, v);
    if (!rule) return memo_.emplace(v, DiffPoly::jet(v)).first->second;
    if (!active_.insert(v).second) {
      throw ReductionFailure("solved set is not triangular: rewriting cycles");
    }
    DiffPoly nf = normal_poly(shifted_rhs(*rule, difference(v.multi, rule->solved.multi)));
    active_.erase(v);
    return memo_.emplace(v, std::move(nf)).first->second;
  }

  DiffPoly normal_poly(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [m, c] : p.terms()) {
      bool reducible = false;
      for (const auto& [v, e] : m.jets()) {
        if (find_rule(rules_, v)) reducible = true;
      }
      if (!reducible) {
        out.add_term(m, c);
        continue;
      }
      DiffPoly prod = DiffPoly::term(m.coefficient_part(), c);
      for (const auto& [v, e] : m.jets()) prod *= normal_var(v).pow(e);
      out += prod;
    }
    return out;
  }

 private:
  std::vector<SolvedRule> rules_;
  int max_order_;
  std::map<JetVar, DiffPoly> memo_;
  std::set<JetVar> active_;
  std::map<std::pair<int, MultiIndex>, DiffPoly> rhs_cache_;
};

}  // namespace

std::vector<SolvedRule> solved_rules(const SystemSpec& sys) {
  std::vector<SolvedRule> rules;
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const Equation& eq = sys.equations[e];
    if (!eq.solved) continue;
    Rational c = solved_coefficient(eq.lhs, *eq.solved);
    DiffPoly rhs = DiffPoly::jet(*eq.solved) - eq.lhs * (Rational(1) / c);
    rules.push_back({static_cast<int>(e), *eq.solved, std::move(rhs), c});
  }
  return rules;
}

bool is_reducible(const JetVar& v, const SystemSpec& sys) {
  for (const auto& eq : sys.equations) {
    if (eq.solved && eq.solved->dep == v.dep && dominates(v.multi, eq.solved->multi)) return true;
  }
  return false;
}

DiffPoly reduce_modulo(const DiffPoly& p, const SystemSpec& sys, int max_order) {
  Reducer r(sys, max_order);
  return r.normal_poly(p);
}

ReductionTrace reduce_with_trace(const DiffPoly& p, const SystemSpec& sys, int max_order) {
  Reducer r(sys, max_order);
  ReductionTrace trace;
  DiffPoly pending = p;
  for (int round = 0; !pending.is_zero(); ++round) {
    if (round == kMaxRounds) throw ReductionFailure("reduction did not reach a normal form");
    DiffPoly next;
    for (const auto& [m, c] : pending.terms()) {
      // Rewrite one power of the highest-ranked reducible factor.
      const SolvedRule* rule = nullptr;
      JetVar target;
      for (auto it = m.jets().rbegin(); it != m.jets().rend() && !rule; ++it) {
        rule = find_rule(r.rules(), it->first);
        target = it->first;
      }
      if (!rule) {
        trace.normal_form.add_term(m, c);
        continue;
      }
      MultiIndex k = difference(target.multi, rule->solved.multi);
      Monomial rest = m.divided_by(target);
      next += DiffPoly::term(rest, c) * r.shifted_rhs(*rule, k);
      trace.cofactors[{rule->equation, k}].add_term(rest, c / rule->coefficient);
    }
    pending = std::move(next);
  }
  std::erase_if(trace.cofactors, [](const auto& kv) { return kv.second.is_zero(); });
  return trace;
}

DiffPoly expand_cofactors(const ReductionTrace& trace, const SystemSpec& sys, int max_order) {
  DiffPoly out;
  for (const auto& [key, cof] : trace.cofactors) {
    const auto& [e, k] = key;
    out += cof * total_derivative(sys.equations.at(e).lhs, k, max_order);
  }
  return out;
}

}  // namespace conslaw
