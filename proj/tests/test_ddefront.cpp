#include "support.hpp"

#include <doctest.h>

using namespace catsolve;
using testsupport::load_fixture;

namespace {

QMPoly mod_t(const QMPoly& p, unsigned order) {
  std::size_t tv = p.vars().index("t");
  std::vector<Term<BigRat>> keep;
  for (const auto& t : p.terms())
    if (t.mono[tv] < order) keep.push_back(t);
  return QMPoly::from_terms(p.ring(), std::move(keep));
}

}  // namespace

TEST_CASE("ex11 numerators match the expected E1 and E2") {
  NumeratorSystem ns = normalize(load_fixture("ex11.dde"), NormalizeMode::minimal);
  REQUIRE(ns.E.size() == 2);
  QMPoly E1 = parse_poly(ns.ring,
                         "(1 - x1)*(u - 1) + t*(2*u^2*x1^2 - u^2*z0 + 2*u^2*z1 - 2*u*x1^2 + u^2 + u*x1 - 2*u*z1 - u)");
  QMPoly E2 = parse_poly(ns.ring, "x2*(1 - u) + t*(2*u^2*x1*x2 + u^2*x1 - 2*u*x1*x2 - u*x1 + u*x2 - u*z1)");
  CHECK(ns.E[0] == E1);
  CHECK(ns.E[1] == E2);
  CHECK(ns.m == std::vector<unsigned>{1, 1});
  CHECK(ns.M == 2);
}

TEST_CASE("print and parse round trip") {
  for (const char* name : {"ex11.dde", "hard.dde", "scalar.dde", "geometric.dde"}) {
    CAPTURE(name);
    DDESystem sys = load_fixture(name);
    CHECK(parse_dde(print_dde(sys)) == sys);
  }
}

TEST_CASE("DSL errors carry locations") {
  try {
    parse_dde("system {\n  unknowns F;\n  catalytic u;\n  F = 1 + t*G;\n}");
    FAIL("expected a DslError");
  } catch (const DslError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_dde("system { unknowns F; catalytic u; F = F + t; }"), DslError);
  CHECK_THROWS_AS(parse_dde("system { unknowns F; catalytic u; point a = 1; F = 1 + t*F(2); }"), DslError);
  CHECK_THROWS_AS(parse_dde("system { unknowns F; catalytic u; F = 1 + t*F^2 "), DslError);
}

TEST_CASE("parameters") {
  std::string src = "system { unknowns F; catalytic u; param s; F = 1 + t*s*u*F^2 + t*D[F]; }";
  DDESystem sys = parse_dde(src);
  CHECK_THROWS_AS(bind_params(sys, true), UnboundParameter);
  CHECK_THROWS_AS(solve_series(sys, 5), UnboundParameter);
  try {
    bind_params(sys, true);
  } catch (const UnboundParameter& e) {
    CHECK(std::string(e.what()) == "unbound parameter s");
  }
  DDESystem hard = load_fixture("hard.dde");
  CHECK(bind_params(hard, true).find_param("s")->value == BigRat(2));
}

TEST_CASE("divided differences in Taylor coordinates") {
  RingPtr r = make_ring({"x1", "z0", "z1", "u"});
  TaylorExpr y = expand_delta(r, 1, 2, 2, BigRat(0));
  CHECK(y.power == 2);
  CHECK(y.num == parse_poly(r, "x1 - z0 - u*z1"));
}

TEST_CASE("n = 1 numerator of the scalar fixture") {
  NumeratorSystem ns = normalize(load_fixture("scalar.dde"), NormalizeMode::minimal);
  // F = 1 + t(u F^2 + (F - F(0))/u), times u
  CHECK(ns.E[0] == parse_poly(ns.ring, "u*(1 - x1) + t*(u^2*x1^2 + x1 - z0)"));
}

TEST_CASE("deformation of the hard fixture") {
  DDESystem sys = bind_params(load_fixture("hard.dde"), true);
  auto [dsys, params] = deform(sys, BigRat(1));
  CHECK(params.M == 2);
  CHECK(params.beta == 4);
  CHECK(params.alpha == 24);
  REQUIRE(params.gamma.size() == 2);
  CHECK(params.gamma[0] == std::vector<std::string>{"1", "t^4"});
  CHECK(params.gamma[1] == std::vector<std::string>{"t^4", "2"});
  CHECK(dsys.a == BigRat(0));

  // Det is diagonal mod t^3 with determinant (-u + t)(-u + 2t)
  NumeratorSystem ns = normalize(dsys, NormalizeMode::deformation_ready);
  for (unsigned mi : ns.m) CHECK(mi == 1);
  QMPoly det = build_det(ns);
  CHECK(mod_t(det, 3) == parse_poly(ns.ring, "(-u + t)*(-u + 2*t)"));

  auto [symbolic, sp] = deform(sys, std::nullopt);
  CHECK(symbolic.find_param("eps") != nullptr);
  CHECK(!sp.epsilon.has_value());
}
