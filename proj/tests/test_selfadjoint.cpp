#include "doctest.h"
#include "support.hpp"

#include "conslaw/error.hpp"
#include "conslaw/render.hpp"
#include "conslaw/selfadjoint.hpp"

using namespace conslaw;
using testing::P;

TEST_CASE("formal Lagrangian of the KP system") {
  const auto sys = testing::kp_system();
  const auto fl = formal_lagrangian(sys);
  const auto& conv = fl.system.conv;
  CHECK(fl.num_original == 2);
  CHECK(fl.adjoint_deps == std::vector<int>{2, 3});
  CHECK(conv.dependents() == std::vector<std::string>{"u", "w", "v", "z"});
  CHECK(fl.lagrangian == P("v*(u_t - u*u_x - u_xxx - w_y) + z*(w_x - u_y)", conv));
}

TEST_CASE("adjoint system is oriented on the mirrored solve hint") {
  const auto fl = formal_lagrangian(testing::kp_system());
  const auto adj = adjoint_system(fl);
  const auto& conv = fl.system.conv;
  CHECK(adj.raw[0] == P("-v_t + u*v_x + v_xxx + z_y", conv));
  CHECK(adj.raw[1] == P("v_y - z_x", conv));
  CHECK(adj.signs == std::vector<int>{-1, -1});
  CHECK(adj.oriented.equations[0].lhs == P("v_t - u*v_x - v_xxx - z_y", conv));
  CHECK(adj.oriented.equations[1].lhs == P("z_x - v_y", conv));
}

TEST_CASE("self-adjointness verdicts") {
  const auto sys = testing::kp_system();
  const auto fl = formal_lagrangian(sys);
  const auto& conv = fl.system.conv;
  const auto yes = check_selfadjointness(fl, parse_substitution("v=u, z=w", conv));
  CHECK(yes.self_adjoint);
  CHECK(yes.substituted[0] == sys.equations[0].lhs);
  CHECK(yes.substituted[1] == sys.equations[1].lhs);

  // Constants solve the adjoint system, so this trivial substitution passes.
  const auto trivial = check_selfadjointness(fl, parse_substitution("v=1, z=0", conv));
  CHECK(trivial.self_adjoint);

  const auto no = check_selfadjointness(fl, parse_substitution("v=w, z=u", conv));
  CHECK_FALSE(no.self_adjoint);
  CHECK_FALSE(no.residuals[0].is_zero());

  CHECK_THROWS_AS(check_selfadjointness(fl, parse_substitution("v=u", conv)), Error);
}

TEST_CASE("adjoint names are configurable and checked") {
  const auto sys = testing::kp_system();
  CHECK(default_adjoint_names(3) == std::vector<std::string>{"v", "z", "v3"});
  const auto fl = formal_lagrangian(sys, {"p", "q"});
  CHECK(fl.system.conv.dependents()[2] == "p");
  CHECK_THROWS_AS(formal_lagrangian(sys, {"u", "q"}), Error);
}

TEST_CASE("a linear system: heat equation is not self-adjoint with v = u") {
  const auto sys = parse_system("indep t, x;\ndep u;\neq u_t - u_xx = 0 solve u_t;\n");
  const auto fl = formal_lagrangian(sys);
  const auto adj = adjoint_system(fl);
  CHECK(adj.oriented.equations[0].lhs == P("v_t + v_xx", fl.system.conv));
  const auto rep = check_selfadjointness(fl, parse_substitution("v=u", fl.system.conv));
  CHECK_FALSE(rep.self_adjoint);
}
