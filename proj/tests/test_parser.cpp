#include "doctest.h"
#include "support.hpp"

#include "conslaw/error.hpp"
#include "conslaw/parser.hpp"
#include "conslaw/render.hpp"
#include "conslaw/symmetry.hpp"

using namespace conslaw;
using testing::P;

namespace {
const Convention kp = Convention::kp();

ParseError parse_error(const std::string& text) {
  try {
    parse_expression(text, kp);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for " << text);
  return ParseError(0, 0, "");
}
}  // namespace

TEST_CASE("precedence and unary minus") {
  CHECK(P("-u^2", kp) == -P("u*u", kp));
  CHECK(P("2*u + 3*u*w", kp) == P("u*(2 + 3*w) - 0", kp) + P("0", kp));
  CHECK(P("u - w - u", kp) == -P("w", kp));
  CHECK(P("(1/2)*u", kp) == P("u/2", kp));
  CHECK(P("u/2/3", kp) == P("(1/6)*u", kp));
  CHECK(P("2^3", kp) == P("8", kp));
  CHECK(P("-(u + w)", kp) == P("-u - w", kp));
}

TEST_CASE("derivative spellings") {
  CHECK(P("u_txx", kp) == P("u_xtx", kp));
  CHECK(P("D(u*w, x, 1)", kp) == P("u_x*w + u*w_x", kp));
  CHECK(P("D(f, t, 2)", kp) == P("f''", kp));
  CHECK(P("D(f, t, 5)", kp) == P("D(D(f'''', t, 1), t, 0)", kp));
  CHECK(P("D(u, y, 0)", kp) == P("u", kp));
}

TEST_CASE("parse errors carry positions") {
  auto e = parse_error("u + q");
  CHECK(e.line() == 1);
  CHECK(e.column() == 5);
  e = parse_error("u + (w");
  CHECK(e.column() == 7);
  e = parse_error("u / w");
  CHECK(e.message().find("constant") != std::string::npos);
  CHECK(parse_error("u/0").line() == 1);
  CHECK(parse_error("f_x").column() == 1);
  CHECK(parse_error("u'").column() == 1);
  CHECK(parse_error("D(u, q, 1)").line() == 1);
  CHECK(parse_error("u_q").column() == 1);
  CHECK_THROWS_AS(parse_expression("u_xxxxxxxxx", kp), Error);
}

TEST_CASE("system files") {
  const SystemSpec sys = testing::kp_system();
  REQUIRE(sys.equations.size() == 2);
  CHECK(sys.equations[0].lhs == P("u_t - u*u_x - u_xxx - w_y", kp));
  CHECK(sys.equations[1].lhs == P("w_x - u_y", kp));
  CHECK(sys.equations[0].solved == JetVar{0, {1, 0, 0}});
  CHECK(sys.equations[1].line == 8);

  const SystemSpec pot = parse_system(read_file(testing::corpus_path("kp_potential.pde")));
  CHECK(pot.conv.dependents() == std::vector<std::string>{"phi"});
  CHECK(!pot.equations[0].solved);
}

TEST_CASE("system file errors point at the offending line") {
  try {
    parse_system("indep t, x, y;\ndep u;\neq u_t - u_q = 0;\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_system("indep t, x;\ndep u;\neq u_t - u*u_x = 0 solve u_x;\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_system("indep t, t;\n"), ParseError);
  CHECK_THROWS_AS(parse_system("indep t;\ndep D;\n"), ParseError);
  CHECK_THROWS_AS(parse_system("bogus;\n"), ParseError);
}

TEST_CASE("generator files match the built-in table") {
  const SystemSpec sys = testing::kp_system();
  for (const std::string k : {"f", "g", "h"}) {
    const auto file = parse_generator(read_file(testing::corpus_path("generators/" + k + ".gen")), sys.conv, k);
    const auto builtin = builtin_kp_generator(k, sys.conv);
    CHECK(file.xi == builtin.xi);
    CHECK(file.eta == builtin.eta);
  }
  CHECK_THROWS_AS(parse_generator("eta u = u_x;", sys.conv, "bad"), ParseError);
  CHECK_THROWS_AS(parse_generator("xi q = 1;", sys.conv, "bad"), ParseError);
}

TEST_CASE("substitution text") {
  const Convention kpa = Convention::kp_with_adjoints();
  const auto rule = parse_substitution("v=u, z=w", kpa);
  CHECK(rule.targets().at(2) == P("u", kpa));
  CHECK(rule.targets().at(3) == P("w", kpa));
  CHECK_THROWS_AS(parse_substitution("v=u_x", kpa), Error);
  CHECK_THROWS_AS(parse_substitution("q=u", kpa), Error);
}

TEST_CASE("plain rendering") {
  CHECK(render_plain(P("-(1/2)*f'*u^2 - x*f''*u", kp), kp) == "-x*f''*u - (1/2)*f'*u^2");
  CHECK(render_plain(P("0", kp), kp) == "0");
  CHECK(render_plain(P("-3", kp), kp) == "-3");
  CHECK(render_plain(P("D(f, t, 6)", kp), kp) == "D(f,t,6)");
  CHECK(render(P("u", kp), kp, Format::Json) == "\"u\"");
}

TEST_CASE("latex rendering") {
  CHECK(render_latex(P("(1/2)*w^2 - u_xx", kp), kp) == "-u_{xx} + \\frac{1}{2} \\omega^{2}");
  CHECK(render_latex(P("f''''*y^3", kp), kp) == "y^{3} f^{(4)}");
  CHECK(latex_name("phi") == "\\phi");
  CHECK_THROWS_AS(parse_format("yaml"), Error);
}
