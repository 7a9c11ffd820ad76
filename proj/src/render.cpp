#include "conslaw/render.hpp"

#include <map>
#include "json.hpp"

#include "conslaw/error.hpp"

namespace conslaw {

Format parse_format(std::string_view name) {
  if (name == "plain") return Format::Plain;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  throw Error("unknown format '" + std::string(name) + "' (plain, latex or json)");
}

namespace {

std::string rational_plain(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return "(" + c.get_num().get_str() + "/" + c.get_den().get_str() + ")";
}

std::string rational_latex(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

std::string power_plain(std::string base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string power_latex(std::string base, int e) {
  return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
}

template <typename CoeffFn, typename FactorsFn>
std::string render_terms(const DiffPoly& p, const char* joiner, CoeffFn coeff, FactorsFn factors) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::vector<std::string> parts = factors(m);
    if (parts.empty()) {
      out += coeff(mag);
      continue;
    }
    if (mag != 1) parts.insert(parts.begin(), coeff(mag));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += joiner;
      out += parts[i];
    }
  }
  return out;
}

}  // namespace

std::string render_plain(const DiffPoly& p, const Convention& conv) {
  return render_terms(p, "*", rational_plain, [&](const Monomial& m) {
    std::vector<std::string> parts;
    for (int i = 0; i < kMaxIndependents; ++i) {
      if (m.coords()[i] == 0) continue;
      std::string name = i < conv.num_independents() ? conv.independents()[i] : "?";
      parts.push_back(power_plain(name, m.coords()[i]));
    }
    for (const auto& [f, e] : m.functions()) parts.push_back(power_plain(symbol_name(f, conv), e));
    for (const auto& [v, e] : m.jets()) parts.push_back(power_plain(symbol_name(v, conv), e));
    return parts;
  });
}

std::string latex_name(const std::string& name) {
  static const std::map<std::string, std::string> greek = {
      {"w", "\\omega"},   {"omega", "\\omega"}, {"phi", "\\phi"},     {"psi", "\\psi"},
      {"alpha", "\\alpha"}, {"beta", "\\beta"}, {"rho", "\\rho"},     {"theta", "\\theta"},
      {"eta", "\\eta"},   {"xi", "\\xi"},       {"zeta", "\\zeta"},   {"sigma", "\\sigma"}};
  auto it = greek.find(name);
  return it == greek.end() ? name : it->second;
}

std::string render_latex(const DiffPoly& p, const Convention& conv) {
  auto jet_latex = [&](const JetVar& v) {
    std::string name = latex_name(conv.dependents().at(v.dep));
    if (v.order() == 0) return name;
    std::string sub;
    for (int i = 0; i < kMaxIndependents; ++i) {
      for (int k = 0; k < v.multi[i]; ++k) sub += conv.independents().at(i);
    }
    return name + "_{" + sub + "}";
  };
  auto func_latex = [&](const FuncSym& f) {
    std::string name = latex_name(conv.functions().at(f.func).name);
    if (f.order <= 3) return name + std::string(f.order, '\'');
    return name + "^{(" + std::to_string(f.order) + ")}";
  };
  return render_terms(p, " ", rational_latex, [&](const Monomial& m) {
    std::vector<std::string> parts;
    for (int i = 0; i < kMaxIndependents; ++i) {
      if (m.coords()[i] == 0) continue;
      parts.push_back(power_latex(conv.independents().at(i), m.coords()[i]));
    }
    for (const auto& [f, e] : m.functions()) {
      std::string base = func_latex(f);
      parts.push_back(e == 1 ? base : power_latex("(" + base + ")", e));
    }
    for (const auto& [v, e] : m.jets()) {
      std::string base = jet_latex(v);
      parts.push_back(e == 1 || v.order() == 0 ? power_latex(base, e)
                                               : power_latex("(" + base + ")", e));
    }
    return parts;
  });
}

std::string render(const DiffPoly& p, const Convention& conv, Format format) {
  switch (format) {
    case Format::Plain:
      return render_plain(p, conv);
    case Format::Latex:
      return render_latex(p, conv);
    case Format::Json:
      return nlohmann::json(render_plain(p, conv)).dump();
  }
  return {};
}

}  // namespace conslaw
