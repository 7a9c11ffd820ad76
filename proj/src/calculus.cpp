#include "conslaw/calculus.hpp"

#include <cmath>
#include <functional>

#include "conslaw/error.hpp"

namespace conslaw {

DiffPoly total_derivative(const DiffPoly& p, int i, int max_order) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    int ce = m.coords()[i];
    if (ce > 0) out.add_term(m.with_coordinate_power(i, ce - 1), c * ce);
    for (const auto& [f, e] : m.functions()) {
      if (f.arg != i) continue;
      FuncSym next = f;
      ++next.order;
      out.add_term(m.divided_by(f) * Monomial::function(next), c * e);
    }
    for (const auto& [v, e] : m.jets()) {
      JetVar next = v.shifted(i);
      if (next.order() > max_order) {
        throw OrderOverflow("total derivative reaches order " + std::to_string(next.order()) +
                            " above the engine maximum " + std::to_string(max_order));
      }
      out.add_term(m.divided_by(v) * Monomial::jet(next), c * e);
    }
  }
  return out;
}

DiffPoly total_derivative(const DiffPoly& p, const MultiIndex& k, int max_order) {
  DiffPoly out = p;
  for (int i = 0; i < kMaxIndependents; ++i) {
    for (int n = 0; n < k[i]; ++n) {
      if (out.is_zero()) return out;
      out = total_derivative(out, i, max_order);
    }
  }
  return out;
}

DiffPoly partial(const DiffPoly& p, const JetVar& v) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(v);
    if (e > 0) out.add_term(m.divided_by(v), c * e);
  }
  return out;
}

namespace {

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

DiffPoly partial_jet(const DiffPoly& p, int dep, std::span<const int> ordered_indices) {
  JetVar v{dep, {}};
  for (int i : ordered_indices) ++v.multi[i];
  long orderings = factorial(v.order());
  for (int c : v.multi) orderings /= factorial(c);
  return partial(p, v) * Rational(1, orderings);
}

DiffPoly euler(const DiffPoly& p, int dep, int max_order) {
  DiffPoly out;
  for (const JetVar& v : p.jet_vars()) {
    if (v.dep != dep) continue;
    DiffPoly term = total_derivative(partial(p, v), v.multi, max_order);
    if (v.order() % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

SubstitutionRule::SubstitutionRule(std::map<int, DiffPoly> targets)
    : targets_(std::move(targets)) {
  for (const auto& [dep, target] : targets_) {
    if (target.jet_order() > 0) {
      throw Error("substitution target must not contain derivatives");
    }
    for (int d : target.dependents()) {
      if (targets_.count(d)) throw Error("cyclic substitution rule");
    }
  }
}

DiffPoly substitute(const DiffPoly& p, const SubstitutionRule& rule, int max_order) {
  if (rule.targets().empty()) return p;
  std::map<JetVar, DiffPoly> cache;
  auto image = [&](const JetVar& v) -> const DiffPoly& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    DiffPoly img = total_derivative(rule.targets().at(v.dep), v.multi, max_order);
    return cache.emplace(v, std::move(img)).first->second;
  };

  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept = m.coefficient_part();
    DiffPoly replaced(1);
    for (const auto& [v, e] : m.jets()) {
      if (rule.substitutes(v.dep)) {
        replaced *= image(v).pow(e);
      } else {
        kept = kept * Monomial::jet(v, e);
      }
    }
    out += DiffPoly::term(kept, c) * replaced;
  }
  return out;
}

DiffPoly specialize_function(const DiffPoly& p, int func, int arg, const DiffPoly& value) {
  if (value.jet_order() >= 0) throw Error("function value must not contain jet variables");
  std::map<int, DiffPoly> derivatives;
  auto derivative = [&](int k) -> const DiffPoly& {
    auto it = derivatives.find(k);
    if (it != derivatives.end()) return it->second;
    MultiIndex mi{};
    mi[arg] = k;
    return derivatives.emplace(k, total_derivative(value, mi)).first->second;
  };

  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept = m;
    DiffPoly replaced(1);
    for (const auto& [f, e] : m.functions()) {
      if (f.func != func) continue;
      kept = kept.divided_by(f, e);
      replaced *= derivative(f.order).pow(e);
    }
    out += DiffPoly::term(kept, c) * replaced;
  }
  return out;
}

namespace {

template <typename T>
T power(const T& base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <typename T>
T evaluate_impl(const DiffPoly& p, const Assignment<T>& point, const Convention& conv,
                std::function<T(const Rational&)> scalar) {
  T sum(0);
  for (const auto& [m, c] : p.terms()) {
    T value = scalar(c);
    for (int i = 0; i < kMaxIndependents; ++i) {
      if (m.coords()[i] == 0) continue;
      if (!point.coords[i]) {
        throw MissingSymbol(i < conv.num_independents() ? conv.independents()[i] : "?");
      }
      value *= power(*point.coords[i], m.coords()[i]);
    }
    for (const auto& [f, e] : m.functions()) {
      auto it = point.functions.find(f);
      if (it == point.functions.end()) throw MissingSymbol(symbol_name(f, conv));
      value *= power(it->second, e);
    }
    for (const auto& [v, e] : m.jets()) {
      auto it = point.jets.find(v);
      if (it == point.jets.end()) throw MissingSymbol(symbol_name(v, conv));
      value *= power(it->second, e);
    }
    sum += value;
  }
  return sum;
}

}  // namespace

Rational evaluate(const DiffPoly& p, const Assignment<Rational>& point, const Convention& conv) {
  return evaluate_impl<Rational>(p, point, conv, [](const Rational& c) { return c; });
}

double evaluate(const DiffPoly& p, const Assignment<double>& point, const Convention& conv) {
  return evaluate_impl<double>(p, point, conv, [](const Rational& c) { return c.get_d(); });
}

}  // namespace conslaw
