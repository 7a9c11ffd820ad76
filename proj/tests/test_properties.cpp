#include "doctest.h"
#include "properties.hpp"

using namespace testing;

namespace {
void require(const PropertyResult& r, int instances) {
  CAPTURE(r.name);
  CAPTURE(r.counterexample);
  CHECK(r.instances == instances);
  CHECK(r.failures == 0);
}
}  // namespace

TEST_CASE("commutation of total derivatives") { require(prop_commutation(300, 101), 300); }
TEST_CASE("Leibniz rule") { require(prop_leibniz(300, 102), 300); }
TEST_CASE("Euler operator kills total divergences") { require(prop_euler_divergence(250, 103), 250); }
TEST_CASE("substitution commutes with total derivatives") { require(prop_substitution(250, 104), 250); }
TEST_CASE("gauge invariance of the divergence") { require(prop_gauge(250, 105), 250); }
TEST_CASE("parse and render round trip") { require(prop_round_trip(500, 106), 500); }
TEST_CASE("traced and memoised reduction agree") { require(prop_reduction_trace(250, 107), 250); }
TEST_CASE("concrete-function oracle") { require(prop_concrete(250, 108), 250); }
TEST_CASE("closed form on random generators") { require(prop_closed_form(100, 109), 100); }

TEST_CASE("the property harness reports failures") {
  const auto r = check_property("always fails", 5, 1, [](Random&) { return std::string("nope"); });
  CHECK(r.failures == 5);
  CHECK(r.counterexample == "nope");
}
