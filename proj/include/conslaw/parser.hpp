#pragma once

#include <string>
#include <string_view>

#include "conslaw/calculus.hpp"
#include "conslaw/system.hpp"

namespace conslaw {

/// Parses a differential expression such as `u_t - u*u_x - (1/2)*f''*y^2`.
///
/// Precedence, high to low: `^`, unary `-`, `*` `/`, binary `+` `-`.
/// Multiplication is always explicit. Derivatives are written as suffixes
/// (`u_txx`, order-insensitive), primes on functions (`f'''`), or
/// `D(expr, var, n)`. Division is only allowed by nonzero constants.
/// Throws ParseError with line and column.
DiffPoly parse_expression(std::string_view text, const Convention& conv,
                          int max_order = kDefaultMaxOrder);

/// Parses a `.pde` file:
///
///     indep t, x, y;
///     dep u, w;
///     func f(t);
///     eq u_t - u*u_x - u_xxx - w_y = 0 solve u_t;
SystemSpec parse_system(std::string_view text, int max_order = kDefaultMaxOrder);

/// Parses a `.gen` file of `xi <indep> = expr;` and `eta <dep> = expr;`
/// statements. Unlisted coefficients are zero. `num_dependents` limits which
/// dependent variables the generator acts on (the rest of `conv` may hold
/// adjoint variables); -1 means all of them.
Generator parse_generator(std::string_view text, const Convention& conv, std::string name,
                          int num_dependents = -1);

/// Parses `v=u, z=w` into a rule over `conv`.
SubstitutionRule parse_substitution(std::string_view text, const Convention& conv);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace conslaw
