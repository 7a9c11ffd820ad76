#include "conslaw/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "conslaw/error.hpp"
#include "conslaw/parser.hpp"
#include "conslaw/reduce.hpp"
#include "conslaw/render.hpp"
#include "conslaw/selfadjoint.hpp"
#include "conslaw/symmetry.hpp"

namespace conslaw::corpus {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKinds = {"adjoint",  "selfadjoint", "symmetry", "closedform",
                                      "conserve", "divergence",  "euler"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Wraps a parse of an expected expression so errors name the case line.
DiffPoly expect(const GoldenCase& gc, const std::string& key, const Convention& conv) {
  auto it = gc.expected.find(key);
  if (it == gc.expected.end()) throw Error(gc.source + ": missing expected '" + key + "'");
  try {
    return parse_expression(it->second, conv);
  } catch (const ParseError& e) {
    throw Error(gc.source + ":" + std::to_string(gc.line_of.at(key)) + ": " + key + ": " + e.what());
  }
}

std::string mismatch(const std::string& key, const DiffPoly& want, const DiffPoly& got,
                     const Convention& conv) {
  return key + ": expected " + render_plain(want, conv) + "\n" +
         std::string(key.size(), ' ') + "       got " + render_plain(got, conv);
}

bool all_zero(const ConservedVector& cv) {
  return std::all_of(cv.c.begin(), cv.c.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

ConservedVector expected_vector(const GoldenCase& gc, const Convention& conv) {
  ConservedVector cv;
  for (int i = 0; i < 3; ++i) cv.c[i] = expect(gc, "C" + std::to_string(i + 1), conv);
  return cv;
}

void run_adjoint(const GoldenCase& gc, const SystemSpec& sys, CaseResult& r) {
  const auto fl = formal_lagrangian(sys);
  const auto adj = adjoint_system(fl);
  r.pass = true;
  for (std::size_t e = 0; e < adj.oriented.equations.size(); ++e) {
    const std::string key = "E" + std::to_string(e + 1);
    const DiffPoly want = expect(gc, key, fl.system.conv);
    const DiffPoly& got = adj.oriented.equations[e].lhs;
    const bool ok = got == want || (gc.mode != Mode::Exact && got == -want);
    if (!ok) {
      r.pass = false;
      r.messages.push_back(mismatch(key, want, got, fl.system.conv));
    }
  }
}

void run_selfadjoint(const GoldenCase& gc, const SystemSpec& sys, CaseResult& r) {
  const auto fl = formal_lagrangian(sys);
  const auto rule = parse_substitution(gc.substitution, fl.system.conv);
  const auto rep = check_selfadjointness(fl, rule);
  r.pass = rep.self_adjoint;
  if (!rep.self_adjoint) r.messages.push_back("not self-adjoint under " + gc.substitution);
  for (std::size_t e = 0; e < rep.substituted.size(); ++e) {
    const std::string key = "E" + std::to_string(e + 1);
    if (!gc.expected.count(key)) continue;
    const DiffPoly want = expect(gc, key, sys.conv);
    if (rep.substituted[e] != want) {
      r.pass = false;
      r.messages.push_back(mismatch(key, want, rep.substituted[e], sys.conv));
    }
  }
}

void run_symmetry(const GoldenCase& gc, const SystemSpec& sys, const fs::path& root,
                  CaseResult& r) {
  const auto gen = load_generator(gc.generator, sys.conv, root);
  const auto rep = check_symmetry(gen, sys);
  r.pass = rep.pass;
  for (std::size_t e = 0; e < rep.residuals.size(); ++e) {
    if (!rep.residuals[e].is_zero())
      r.messages.push_back("residual of equation " + std::to_string(e + 1) + ": " +
                           render_plain(rep.residuals[e], sys.conv));
  }
}

void run_closedform(const GoldenCase& gc, const SystemSpec& sys, const fs::path& root,
                    CaseResult& r) {
  const auto fl = formal_lagrangian(sys);
  const auto gen = load_generator(gc.generator, sys.conv, root);
  const auto rule = parse_substitution(gc.substitution, fl.system.conv);
  const auto general = conserved_vector(fl, gen, rule);
  const auto closed = kp_closed_form(characteristic(gen));
  r.pass = general == closed;
  for (int i = 0; i < 3; ++i) {
    if (general.c[i] != closed.c[i])
      r.messages.push_back(mismatch("C" + std::to_string(i + 1), closed.c[i], general.c[i], sys.conv));
  }
}

void run_conserve(const GoldenCase& gc, const SystemSpec& sys, const fs::path& root,
                  CaseResult& r) {
  const auto fl = formal_lagrangian(sys);
  const auto gen = load_generator(gc.generator, sys.conv, root);
  const auto rule = parse_substitution(gc.substitution, fl.system.conv);
  const auto raw = conserved_vector(fl, gen, rule);
  ConservedVector got;
  if (gc.pipeline == "gauge") {
    const GaugeTriple g{expect(gc, "P", sys.conv), expect(gc, "Q", sys.conv),
                        expect(gc, "R", sys.conv)};
    got = reduce_vector(gauge_transform(reduce_vector(raw, sys), g), sys);
  } else if (gc.pipeline == "simplify") {
    got = simplify_density(raw, sys).vector;
  } else {
    throw Error(gc.source + ": pipeline must be 'gauge' or 'simplify'");
  }
  const auto cmp = compare_vectors(got, expected_vector(gc, sys.conv), gc.mode, sys);
  r.pass = cmp.pass;
  r.sign = cmp.sign;
  r.messages = cmp.diff;
}

void run_divergence(const GoldenCase& gc, const SystemSpec& sys, CaseResult& r) {
  const auto cv = expected_vector(gc, sys.conv);
  const auto rep = verify_divergence(cv, sys);
  r.pass = rep.pass;
  if (!rep.pass) r.messages.push_back("residual: " + render_plain(rep.residual, sys.conv));
  if (gc.expected.count("identity")) {
    const DiffPoly want = expect(gc, "identity", sys.conv);
    if (rep.divergence != want) {
      r.pass = false;
      r.messages.push_back(mismatch("identity", want, rep.divergence, sys.conv));
    }
  }
  std::vector<int> signs;
  for (std::size_t e = 0; e < sys.equations.size(); ++e) {
    const std::string key = "M" + std::to_string(e + 1);
    if (!gc.expected.count(key)) continue;
    if (!rep.multipliers_are_plain()) {
      r.pass = false;
      r.messages.push_back("multipliers involve derivatives of the equations");
    }
    const DiffPoly want = expect(gc, key, sys.conv);
    const DiffPoly got = rep.multiplier(static_cast<int>(e));
    if (got == want) {
      signs.push_back(1);
    } else if (gc.mode != Mode::Exact && got == -want) {
      signs.push_back(-1);
    } else {
      r.pass = false;
      r.messages.push_back(mismatch(key, want, got, sys.conv));
    }
  }
  if (!signs.empty()) r.sign = signs.front();
}

void run_euler(const GoldenCase& gc, const SystemSpec& sys, CaseResult& r) {
  if (gc.lagrangian.empty() || gc.dep.empty()) throw Error(gc.source + ": euler needs lagrangian and dep");
  const auto dep = sys.conv.find_dependent(gc.dep);
  if (!dep) throw Error(gc.source + ": unknown dependent variable '" + gc.dep + "'");
  const DiffPoly lag = parse_expression(gc.lagrangian, sys.conv);
  const DiffPoly got = euler(lag, *dep);
  const DiffPoly want = expect(gc, "E", sys.conv);
  r.pass = got == want || (gc.mode != Mode::Exact && got == -want);
  if (!r.pass) r.messages.push_back(mismatch("E", want, got, sys.conv));
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "up-to-sign") return Mode::UpToSign;
  if (text == "up-to-sign-and-gauge") return Mode::UpToSignAndGauge;
  throw Error("unknown comparison mode '" + text + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Exact: return "exact";
    case Mode::UpToSign: return "up-to-sign";
    case Mode::UpToSignAndGauge: return "up-to-sign-and-gauge";
  }
  return "";
}

GoldenCase parse_case(const std::string& text, const std::string& source) {
  GoldenCase gc;
  gc.source = source;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool has_mode = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError(line, 1, "expected 'key: value'");
    const std::string key = trim(s.substr(0, colon));
    const std::string val = trim(s.substr(colon + 1));
    if (key.empty() || val.empty()) throw ParseError(line, 1, "empty key or value");
    if (gc.line_of.count(key)) throw ParseError(line, 1, "duplicate key '" + key + "'");
    gc.line_of[key] = line;
    if (key == "name") gc.name = val;
    else if (key == "kind") gc.kind = val;
    else if (key == "system") gc.system = val;
    else if (key == "generator") gc.generator = val;
    else if (key == "substitution") gc.substitution = val;
    else if (key == "pipeline") gc.pipeline = val;
    else if (key == "justification") gc.justification = val;
    else if (key == "lagrangian") gc.lagrangian = val;
    else if (key == "dep") gc.dep = val;
    else if (key == "mode") {
      try {
        gc.mode = parse_mode(val);
      } catch (const Error& e) {
        throw ParseError(line, colon + 3, e.what());
      }
      has_mode = true;
    } else {
      gc.expected[key] = val;
    }
  }
  if (gc.name.empty()) throw ParseError(line, 1, "missing 'name'");
  if (!kKinds.count(gc.kind)) throw ParseError(line, 1, "missing or unknown 'kind'");
  if (gc.system.empty()) throw ParseError(line, 1, "missing 'system'");
  if (!has_mode) throw ParseError(line, 1, "missing 'mode'");
  if (gc.justification.empty()) throw ParseError(line, 1, "missing 'justification'");
  return gc;
}

std::vector<GoldenCase> load_cases(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".case") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<GoldenCase> out;
  for (const auto& f : files) {
    try {
      out.push_back(parse_case(read_file(f.string()), f.string()));
    } catch (const ParseError& e) {
      throw Error(f.string() + ":" + e.what());
    }
  }
  return out;
}

Generator load_generator(const std::string& spec, const Convention& conv, const fs::path& root) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin_kp_generator(spec.substr(prefix.size()), conv);
  fs::path p(spec);
  if (p.is_relative() && !fs::exists(p)) p = root / p;
  const std::string text = read_file(p.string());
  try {
    return parse_generator(text, conv, p.stem().string());
  } catch (const ParseError& e) {
    throw Error(p.string() + ":" + e.what());
  }
}

Comparison compare_vectors(const ConservedVector& actual, const ConservedVector& expected,
                           Mode mode, const SystemSpec& sys) {
  Comparison out;
  if (actual == expected) {
    out.pass = true;
    return out;
  }
  if (mode != Mode::Exact) {
    ConservedVector neg;
    for (int i = 0; i < 3; ++i) neg.c[i] = -expected.c[i];
    if (actual == neg) {
      out.pass = true;
      out.sign = -1;
      return out;
    }
  }
  if (mode == Mode::UpToSignAndGauge) {
    for (int s : {1, -1}) {
      ConservedVector diff;
      for (int i = 0; i < 3; ++i) diff.c[i] = actual.c[i] - Rational(s) * expected.c[i];
      if (all_zero(simplify_density(diff, sys).vector)) {
        out.pass = true;
        out.sign = s;
        return out;
      }
    }
  }
  // Report against whichever sign matches more components.
  int plus = 0, minus = 0;
  for (int i = 0; i < 3; ++i) {
    plus += actual.c[i] == expected.c[i];
    minus += actual.c[i] == -expected.c[i];
  }
  out.sign = mode != Mode::Exact && minus > plus ? -1 : 1;
  for (int i = 0; i < 3; ++i) {
    const DiffPoly want = Rational(out.sign) * expected.c[i];
    if (actual.c[i] != want)
      out.diff.push_back(mismatch("C" + std::to_string(i + 1), want, actual.c[i], sys.conv));
  }
  return out;
}

CaseResult run_case(const GoldenCase& gc, const fs::path& root) {
  CaseResult r;
  r.name = gc.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const fs::path sys_path = root / gc.system;
    SystemSpec sys;
    try {
      sys = parse_system(read_file(sys_path.string()));
    } catch (const ParseError& e) {
      throw Error(sys_path.string() + ":" + e.what());
    }
    if (gc.kind == "adjoint") run_adjoint(gc, sys, r);
    else if (gc.kind == "selfadjoint") run_selfadjoint(gc, sys, r);
    else if (gc.kind == "symmetry") run_symmetry(gc, sys, root, r);
    else if (gc.kind == "closedform") run_closedform(gc, sys, root, r);
    else if (gc.kind == "conserve") run_conserve(gc, sys, root, r);
    else if (gc.kind == "divergence") run_divergence(gc, sys, r);
    else if (gc.kind == "euler") run_euler(gc, sys, r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.messages.push_back(e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace conslaw::corpus
