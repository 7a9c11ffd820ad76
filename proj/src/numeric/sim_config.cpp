#include "conslaw/numeric/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace conslaw::numeric {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

double to_double(const std::string& v, int line) {
  std::string body = v;
  double factor = 1;
  if (body.size() >= 3 && body.compare(body.size() - 3, 3, "*pi") == 0) {
    body = trim(body.substr(0, body.size() - 3));
    factor = M_PI;
  } else if (body == "pi") {
    return M_PI;
  }
  double out = 0;
  const auto* end = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(body.data(), end, out);
  if (ec != std::errc() || ptr != end || body.empty())
    throw ParseError(line, 1, "expected a number, got '" + v + "'");
  return out * factor;
}

long to_integer(const std::string& v, int line) {
  long out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty())
    throw ParseError(line, 1, "expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError(line, 1, "expected true or false, got '" + v + "'");
}

std::string to_string(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    throw ParseError(line, 1, "expected a quoted string, got '" + v + "'");
  return v.substr(1, v.size() - 2);
}

}  // namespace

SimulationSpec parse_sim_config(const std::string& text) {
  SimulationSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, 1, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key == "nx") spec.nx = static_cast<int>(to_integer(val, line));
    else if (key == "ny") spec.ny = static_cast<int>(to_integer(val, line));
    else if (key == "lx") spec.lx = to_double(val, line);
    else if (key == "ly") spec.ly = to_double(val, line);
    else if (key == "dt") spec.solver.dt = to_double(val, line);
    else if (key == "t_end") spec.solver.t_end = to_double(val, line);
    else if (key == "dealias") spec.solver.dealias = to_double(val, line);
    else if (key == "nonlinear") spec.solver.nonlinear = to_bool(val, line);
    else if (key == "snapshot_every") spec.solver.snapshot_every = static_cast<int>(to_integer(val, line));
    else if (key == "seed") spec.seed = static_cast<std::uint64_t>(to_integer(val, line));
    else if (key == "amplitude") spec.amplitude = to_double(val, line);
    else if (key == "modes") spec.modes = static_cast<int>(to_integer(val, line));
    else if (key == "integrator") {
      const auto name = to_string(val, line);
      if (name == "etdrk4") spec.solver.integrator = Integrator::Etdrk4;
      else if (name == "ifrk4") spec.solver.integrator = Integrator::Ifrk4;
      else throw ParseError(line, 1, "unknown integrator '" + name + "'");
    } else {
      throw ParseError(line, 1, "unknown key '" + key + "'");
    }
  }
  try {
    spec.solver.validate();
    (void)spec.grid();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, 1, e.what());
  }
  return spec;
}

}  // namespace conslaw::numeric
