#pragma once

#include <string>
#include <string_view>

#include "conslaw/diffpoly.hpp"

namespace conslaw {

enum class Format { Plain, Latex, Json };

/// Throws Error for anything but plain, latex or json.
Format parse_format(std::string_view name);

/// Deterministic rendering in term order. Plain output parses back to the
/// same polynomial; JSON output is a JSON string holding the plain form.
std::string render(const DiffPoly& p, const Convention& conv, Format format = Format::Plain);

std::string render_plain(const DiffPoly& p, const Convention& conv);
std::string render_latex(const DiffPoly& p, const Convention& conv);

/// LaTeX spelling of a variable name (`w` -> `\omega`, `phi` -> `\phi`).
std::string latex_name(const std::string& name);

}  // namespace conslaw
