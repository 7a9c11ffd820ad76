#include "conslaw/cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "conslaw/conslaw.hpp"
#include "conslaw/corpus.hpp"
#include "conslaw/error.hpp"
#include "conslaw/numeric/diagnostics.hpp"
#include "conslaw/numeric/sim_config.hpp"
#include "conslaw/parser.hpp"
#include "conslaw/reduce.hpp"
#include "conslaw/render.hpp"
#include "conslaw/selfadjoint.hpp"
#include "conslaw/symmetry.hpp"

namespace conslaw::cli {

namespace {

namespace fs = std::filesystem;

// Bad input: unreadable files, parse errors, unsupported requests.
struct UsageError : Error {
  using Error::Error;
};

constexpr const char* kKpSystem =
    "indep t, x, y;\n"
    "dep u, w;\n"
    "func f(t), g(t), h(t);\n"
    "eq u_t - u*u_x - u_xxx - w_y = 0 solve u_t;\n"
    "eq w_x - u_y = 0 solve w_x;\n";

template <typename F>
auto as_usage(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw UsageError(where + ":" + e.what());
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(where + ": " + e.what());
  }
}

SystemSpec load_system(const std::string& path) {
  return as_usage(path, [&] { return parse_system(read_file(path)); });
}

Generator load_gen(const std::string& spec, const Convention& conv) {
  return as_usage("--gen " + spec, [&] { return corpus::load_generator(spec, conv); });
}

SubstitutionRule load_rule(const std::string& text, const Convention& conv) {
  return as_usage("--subst", [&] { return parse_substitution(text, conv); });
}

Format load_format(const std::string& name) {
  return as_usage("--format", [&] { return parse_format(name); });
}

std::string line(const std::string& key, const DiffPoly& p, const Convention& conv, Format f) {
  if (f == Format::Latex) return key + " &= " + render_latex(p, conv) + " \\\\\n";
  return key + " = " + render_plain(p, conv) + "\n";
}

nlohmann::ordered_json expr_json(const DiffPoly& p, const Convention& conv) {
  return render_plain(p, conv);
}

int cmd_adjoint(const std::string& path, Format fmt, std::ostream& out) {
  const auto sys = load_system(path);
  const auto fl = formal_lagrangian(sys);
  const auto adj = adjoint_system(fl);
  const auto& conv = fl.system.conv;
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["lagrangian"] = expr_json(fl.lagrangian, conv);
    j["adjoint"] = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < adj.oriented.equations.size(); ++e)
      j["adjoint"].push_back({{"expr", expr_json(adj.oriented.equations[e].lhs, conv)},
                              {"sign", adj.signs[e]}});
    out << j.dump(2) << "\n";
    return kPass;
  }
  out << line("L", fl.lagrangian, conv, fmt);
  for (std::size_t e = 0; e < adj.oriented.equations.size(); ++e)
    out << line("E" + std::to_string(e + 1), adj.oriented.equations[e].lhs, conv, fmt);
  return kPass;
}

int cmd_selfcheck(const std::string& path, const std::string& subst, Format fmt, std::ostream& out) {
  const auto sys = load_system(path);
  const auto fl = formal_lagrangian(sys);
  const auto rule = load_rule(subst, fl.system.conv);
  const auto rep = check_selfadjointness(fl, rule);
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["substitution"] = subst;
    j["substituted"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.substituted) j["substituted"].push_back(expr_json(p, sys.conv));
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.residuals) j["residuals"].push_back(expr_json(p, sys.conv));
    j["self_adjoint"] = rep.self_adjoint;
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t e = 0; e < rep.substituted.size(); ++e)
      out << line("E" + std::to_string(e + 1), rep.substituted[e], sys.conv, fmt);
    for (std::size_t e = 0; e < rep.residuals.size(); ++e)
      if (!rep.residuals[e].is_zero())
        out << "residual of E" << e + 1 << " = " << render_plain(rep.residuals[e], sys.conv) << "\n";
    out << "self-adjoint: " << (rep.self_adjoint ? "yes" : "no") << "\n";
  }
  return rep.self_adjoint ? kPass : kFail;
}

int cmd_symcheck(const std::string& path, const std::string& gen_spec, Format fmt,
                 std::ostream& out) {
  const auto sys = load_system(path);
  const auto gen = load_gen(gen_spec, sys.conv);
  const auto rep = check_symmetry(gen, sys);
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["generator"] = gen.name;
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.residuals) j["residuals"].push_back(expr_json(p, sys.conv));
    j["pass"] = rep.pass;
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t e = 0; e < rep.residuals.size(); ++e)
      out << line("residual of E" + std::to_string(e + 1), rep.residuals[e], sys.conv, fmt);
    out << "symmetry " << gen.name << ": " << (rep.pass ? "pass" : "fail") << "\n";
  }
  return rep.pass ? kPass : kFail;
}

int cmd_conserve(const std::string& path, const std::string& gen_spec, const std::string& subst,
                 bool simplify, bool keep_xil, Format fmt, std::ostream& out) {
  const auto sys = load_system(path);
  const auto fl = formal_lagrangian(sys);
  const auto gen = load_gen(gen_spec, sys.conv);
  const auto rule = load_rule(subst, fl.system.conv);
  const auto cv = conserved_vector(fl, gen, rule, keep_xil);
  if (!simplify) {
    out << render_vector(cv, sys.conv, fmt);
    return kPass;
  }
  const auto s = simplify_density(cv, sys);
  out << render_vector(s.vector, sys.conv, fmt);
  if (fmt != Format::Json) {
    out << (fmt == Format::Latex ? "% " : "# ") << "sign " << s.sign << "\n";
    out << line("P", s.gauge.p, sys.conv, fmt) << line("Q", s.gauge.q, sys.conv, fmt)
        << line("R", s.gauge.r, sys.conv, fmt);
  }
  return kPass;
}

int cmd_verify(const std::string& path, const std::string& vector_path, Format fmt,
               std::ostream& out) {
  const auto sys = load_system(path);
  const auto cv = as_usage(vector_path, [&] { return parse_vector_json(read_file(vector_path), sys.conv); });
  const auto rep = verify_divergence(cv, sys);
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["divergence"] = expr_json(rep.divergence, sys.conv);
    j["residual"] = expr_json(rep.residual, sys.conv);
    j["multipliers"] = nlohmann::ordered_json::array();
    for (const auto& [key, m] : rep.multipliers) {
      const auto& [e, k] = key;
      j["multipliers"].push_back({{"equation", e + 1}, {"derivative", {k[0], k[1], k[2]}},
                                  {"expr", expr_json(m, sys.conv)}});
    }
    j["pass"] = rep.pass;
    out << j.dump(2) << "\n";
  } else {
    out << line("divergence", rep.divergence, sys.conv, fmt);
    for (const auto& [key, m] : rep.multipliers) {
      const auto& [e, k] = key;
      std::string name = "multiplier of E" + std::to_string(e + 1);
      if (order(k) > 0) {
        name += " under D(";
        for (int i = 0; i < 3; ++i)
          name += std::string(k[i], sys.conv.independents()[i][0]);
        name += ")";
      }
      out << line(name, m, sys.conv, fmt);
    }
    if (!rep.pass) out << line("residual", rep.residual, sys.conv, fmt);
    out << "verify: " << (rep.pass ? "pass" : "fail") << "\n";
  }
  return rep.pass ? kPass : kFail;
}

// A named density for `simulate`: the simplified conserved vector of a KP
// generator with its function specialised to a polynomial in t.
ConservedVector simulation_vector(const std::string& name, const SystemSpec& sys) {
  std::string gen_spec, func, value;
  if (name == "mass") {
    gen_spec = "builtin:h", func = "h", value = "t";
  } else if (name == "l2") {
    gen_spec = "builtin:f", func = "f", value = "t";
  } else {
    // <generator>@<func>=<polynomial in t>
    const auto at = name.find('@'), eq = name.find('=');
    if (at == std::string::npos || eq == std::string::npos || eq < at)
      throw UsageError("unknown density '" + name + "' (mass, l2 or <gen>@<func>=<poly>)");
    gen_spec = name.substr(0, at);
    func = name.substr(at + 1, eq - at - 1);
    value = name.substr(eq + 1);
  }
  const auto fl = formal_lagrangian(sys);
  const auto gen = load_gen(gen_spec, sys.conv);
  const auto rule = load_rule("v=u, z=w", fl.system.conv);
  auto cv = simplify_density(conserved_vector(fl, gen, rule), sys).vector;
  const auto idx = sys.conv.find_function(func);
  if (!idx) throw UsageError("density '" + name + "': unknown function '" + func + "'");
  const int arg = sys.conv.functions()[*idx].arg;
  const DiffPoly v = as_usage("density '" + name + "'", [&] { return parse_expression(value, sys.conv); });
  for (auto& c : cv.c) c = specialize_function(c, *idx, arg, v);
  // Every other arbitrary function must be gone.
  for (const auto& c : cv.c)
    if (!c.function_symbols().empty())
      throw UsageError("density '" + name + "' still depends on an arbitrary function");
  try {
    numeric::require_coordinate_free(cv, sys.conv);
  } catch (const Unsupported& e) {
    throw UsageError("density '" + name + "': " + e.what());
  }
  return cv;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_simulate(const std::string& config, const std::string& densities, const std::string& csv,
                 std::optional<double> tolerance, std::ostream& out) {
  const auto spec = as_usage(config, [&] { return numeric::parse_sim_config(read_file(config)); });
  const auto sys = parse_system(kKpSystem);
  const auto names = split(densities, ',');
  if (names.empty()) throw UsageError("--densities is empty");
  std::vector<ConservedVector> vectors;
  for (const auto& n : names) vectors.push_back(simulation_vector(n, sys));

  const auto grid = spec.grid();
  const auto init = numeric::random_initial_field(grid, spec.seed, spec.amplitude, spec.modes);
  const auto traj = numeric::solve_kp(grid, spec.solver, init);
  std::vector<numeric::DiagnosticSeries> series;
  for (const auto& cv : vectors) series.push_back(numeric::conservation_drift(traj, cv, sys.conv));

  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw UsageError("cannot write " + csv);
    f << "time";
    for (const auto& n : names) f << "," << n;
    f << "\n";
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      f << format_double(series[0].times[k]);
      for (const auto& s : series) f << "," << format_double(s.values[k]);
      f << "\n";
    }
  }
  bool ok = true;
  for (std::size_t d = 0; d < names.size(); ++d) {
    out << names[d] << ": C1 = " << render_plain(vectors[d].c[0], sys.conv)
        << ", initial " << format_double(series[d].values.front())
        << ", drift " << format_double(series[d].drift) << "\n";
    if (tolerance && series[d].drift > *tolerance) {
      ok = false;
      out << names[d] << ": drift exceeds tolerance " << format_double(*tolerance) << "\n";
    }
  }
  return ok ? kPass : kFail;
}

int cmd_golden(const std::string& dir, std::ostream& out) {
  const fs::path d(dir);
  const auto cases = as_usage(dir, [&] { return corpus::load_cases(d); });
  // Paths inside cases are relative to the corpus root, the parent of `dir`.
  const fs::path root = fs::weakly_canonical(d).parent_path();
  int failed = 0;
  for (const auto& gc : cases) {
    const auto r = corpus::run_case(gc, root);
    out << (r.pass ? "PASS " : "FAIL ") << gc.name << " (" << gc.kind << ", "
        << corpus::mode_name(gc.mode);
    if (gc.mode != corpus::Mode::Exact) out << ", sign " << (r.sign > 0 ? "+1" : "-1");
    out << ")\n";
    for (const auto& m : r.messages) out << "  " << gc.source << ": " << m << "\n";
    failed += !r.pass;
  }
  out << cases.size() - failed << "/" << cases.size() << " golden cases passed\n";
  return failed == 0 ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conservation laws through nonlinear self-adjointness", "conslaw-kit"};
  app.require_subcommand(1);

  std::string system, gen, subst = "v=u, z=w", format = "plain", vector_path, config,
                      densities = "mass,l2", csv, golden_dir = "corpus/golden";
  bool simplify = false, keep_xil = false;
  std::optional<double> tolerance;

  auto add_system = [&](CLI::App* c) { c->add_option("system", system, "system file (.pde)")->required(); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "plain, latex or json")->capture_default_str();
  };

  auto* adjoint = app.add_subcommand("adjoint", "formal Lagrangian and adjoint system");
  add_system(adjoint);
  add_format(adjoint);

  auto* selfcheck = app.add_subcommand("selfcheck", "test nonlinear self-adjointness");
  add_system(selfcheck);
  selfcheck->add_option("--subst", subst, "substitution, e.g. 'v=u, z=w'")->capture_default_str();
  add_format(selfcheck);

  auto* symcheck = app.add_subcommand("symcheck", "test a symmetry generator");
  add_system(symcheck);
  symcheck->add_option("--gen", gen, "builtin:f|g|h or a .gen file")->required();
  add_format(symcheck);

  auto* conserve = app.add_subcommand("conserve", "conserved vector of a symmetry");
  add_system(conserve);
  conserve->add_option("--gen", gen, "builtin:f|g|h or a .gen file")->required();
  conserve->add_option("--subst", subst, "substitution for the adjoint variables")->capture_default_str();
  conserve->add_flag("--simplify", simplify, "remove trivial parts of the density");
  conserve->add_flag("--keep-xiL", keep_xil, "keep the xi^i L term");
  add_format(conserve);

  auto* verify = app.add_subcommand("verify", "check a conserved vector");
  add_system(verify);
  verify->add_option("--vector", vector_path, "vector in JSON form")->required();
  add_format(verify);

  auto* simulate = app.add_subcommand("simulate", "numeric conservation check on the KP system");
  simulate->add_option("--config", config, "simulation config (key = value)")->required();
  simulate->add_option("--densities", densities, "mass, l2 or <gen>@<func>=<poly in t>")->capture_default_str();
  simulate->add_option("--out", csv, "CSV of the integrals over time");
  simulate->add_option("--tolerance", tolerance, "fail when a relative drift exceeds this");

  auto* golden = app.add_subcommand("golden", "run the golden corpus");
  golden->add_option("dir", golden_dir, "directory of .case files")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "conslaw-kit: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Format fmt = load_format(format);
    if (adjoint->parsed()) return cmd_adjoint(system, fmt, out);
    if (selfcheck->parsed()) return cmd_selfcheck(system, subst, fmt, out);
    if (symcheck->parsed()) return cmd_symcheck(system, gen, fmt, out);
    if (conserve->parsed()) return cmd_conserve(system, gen, subst, simplify, keep_xil, fmt, out);
    if (verify->parsed()) return cmd_verify(system, vector_path, fmt, out);
    if (simulate->parsed()) return cmd_simulate(config, densities, csv, tolerance, out);
    if (golden->parsed()) return cmd_golden(golden_dir, out);
  } catch (const UsageError& e) {
    err << "conslaw-kit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "conslaw-kit: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

}  // namespace conslaw::cli
