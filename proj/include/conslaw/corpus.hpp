#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "conslaw/conslaw.hpp"
#include "conslaw/system.hpp"

namespace conslaw::corpus {

enum class Mode { Exact, UpToSign, UpToSignAndGauge };

Mode parse_mode(const std::string& text);
std::string mode_name(Mode mode);

/// One `.case` file: `key: value` lines, `#` comments.
///
/// Known keys: name, kind, system, generator, substitution, pipeline, mode,
/// justification, lagrangian, dep. Every other key (C1, P, E1, M2, ...) is an
/// expected expression.
struct GoldenCase {
  std::string source;
  std::string name;
  std::string kind;  // adjoint selfadjoint symmetry closedform conserve divergence euler
  std::string system;
  std::string generator;
  std::string substitution;
  std::string pipeline;  // gauge | simplify
  std::string justification;
  std::string lagrangian;
  std::string dep;
  Mode mode = Mode::Exact;
  std::map<std::string, std::string> expected;
  std::map<std::string, int> line_of;
};

/// Throws ParseError on malformed lines, unknown kinds, or missing keys.
GoldenCase parse_case(const std::string& text, const std::string& source = "<case>");

/// All `*.case` files under `dir`, sorted by file name.
std::vector<GoldenCase> load_cases(const std::filesystem::path& dir);

/// `builtin:f` (or g, h), otherwise a `.gen` path resolved against `root`.
Generator load_generator(const std::string& spec, const Convention& conv,
                         const std::filesystem::path& root = ".");

struct Comparison {
  bool pass = false;
  int sign = 1;
  std::vector<std::string> diff;  // one line per mismatching component
};

/// Compares component by component under `mode`. For up-to-sign one sign is
/// shared by the whole vector. Up-to-sign-and-gauge also accepts a difference
/// that simplify_density reduces to zero.
Comparison compare_vectors(const ConservedVector& actual, const ConservedVector& expected,
                           Mode mode, const SystemSpec& sys);

struct CaseResult {
  std::string name;
  bool pass = false;
  int sign = 1;
  std::vector<std::string> messages;
  double seconds = 0;
};

/// Runs one case. Paths in the case are resolved against `root`. Never
/// throws for case failures; errors become messages.
CaseResult run_case(const GoldenCase& gc, const std::filesystem::path& root);

}  // namespace conslaw::corpus
