#include "support.hpp"

#include "catsolve/polyops.hpp"

#include <doctest.h>

using namespace catsolve;
using testsupport::load_fixture;

TEST_CASE("n = 1: Det and P are the partial derivatives") {
  NumeratorSystem ns = normalize(load_fixture("scalar.dde"), NormalizeMode::minimal);
  CHECK(build_det(ns) == ns.E[0].derivative("x1"));
  CHECK(build_p(ns) == ns.E[0].derivative("u"));
}

TEST_CASE("ex11 Det and P") {
  NumeratorSystem ns = normalize(load_fixture("ex11.dde"), NormalizeMode::minimal);
  QMPoly det = build_det(ns);
  CHECK(det == parse_poly(ns.ring, "(4*t*u^2*x1 - 4*t*u*x1 + t*u - u + 1)*(2*t*u^2*x1 - 2*t*u*x1 + t*u - u + 1)"));
  QMPoly p = build_p(ns);
  CHECK(p.coeffs_in(ns.ring->vars.index("u"))[0] ==
        parse_poly(ns.ring, "-2*t*x1*x2 - t*x1 + t*x2 - t*z1 - x2"));
  auto [stripped, e] = strip_catalytic_power(det * parse_poly(ns.ring, "(u - 1)^2"), ns);
  CHECK(e == 2);
  CHECK(stripped == det);
}

TEST_CASE("duplicated system shape") {
  for (const char* name : {"ex11.dde", "scalar.dde"}) {
    CAPTURE(name);
    NumeratorSystem ns = normalize(bind_params(load_fixture(name), true), NormalizeMode::minimal);
    DuplicatedSystem ds = duplicate(build_kernel_system(ns));
    std::size_t expected = ns.n * ns.k * (ns.n + 2);
    CHECK(ds.Sdup.size() == expected);
    CHECK(ds.ring->nvars() == expected + 1);  // plus t
    CHECK(ds.copies == ns.n * ns.k);
  }
  NumeratorSystem ns = normalize(load_fixture("ex11.dde"), NormalizeMode::minimal);
  DuplicatedSystem ds = duplicate(build_kernel_system(ns));
  // copy 2 is copy 1 with x1, x2, u1 renamed to x3, x4, u2
  QMPoly e1 = ds.Sdup[0];
  QMPoly moved = compose(e1, ds.ring,
                         {QMPoly::var(ds.ring, "x3", BigRat(1)), QMPoly::var(ds.ring, "x4", BigRat(1)),
                          QMPoly::var(ds.ring, "x3", BigRat(1)), QMPoly::var(ds.ring, "x4", BigRat(1)),
                          QMPoly::var(ds.ring, "u2", BigRat(1)), QMPoly::var(ds.ring, "u2", BigRat(1)),
                          QMPoly::var(ds.ring, "z0", BigRat(1)), QMPoly::var(ds.ring, "z1", BigRat(1)),
                          QMPoly::var(ds.ring, "t", BigRat(1))});
  CHECK(moved == ds.Sdup[4]);
  CHECK_THROWS(build_kernel_system(normalize(load_fixture("geometric.dde"), NormalizeMode::minimal)));
}

TEST_CASE("genericity: ex11 is zero-dimensional, hard is not") {
  NumeratorSystem ex = normalize(load_fixture("ex11.dde"), NormalizeMode::minimal);
  GenericityResult g = genericity_check(duplicate(build_kernel_system(ex)));
  CHECK(std::holds_alternative<ZeroDimensional>(g.dimension));
  CHECK(g.samples.size() >= 2);

  NumeratorSystem hard = normalize(bind_params(load_fixture("hard.dde"), true), NormalizeMode::minimal);
  GenericityResult h = genericity_check(duplicate(build_kernel_system(hard)));
  CHECK(std::holds_alternative<PositiveDimensional>(h.dimension));
}

TEST_CASE("scalar case: modular eliminant equals the classical triple") {
  DDESystem sys = load_fixture("scalar.dde");
  NumeratorSystem ns = normalize(sys, NormalizeMode::minimal);
  DuplicatedSystem ds = duplicate(build_kernel_system(ns));
  EliminantInfo e = eliminant(ds, "z0");
  QMPoly classical = classical_scalar_eliminant(ns, "z0");
  CHECK(e.poly == classical);
  TruncTSeries s = specialize(solve_series(sys, 30)[0], BigRat(0), 0);
  CHECK(verify_annihilation(e.poly, s, 30));
  CHECK_THROWS(classical_scalar_eliminant(normalize(load_fixture("ex11.dde"), NormalizeMode::minimal), "z0"));
}

TEST_CASE("reduce_to_scalar") {
  NumeratorSystem ns = normalize(load_fixture("ex11.dde"), NormalizeMode::minimal);
  // E1 does not involve x2, so the resultant is E1 up to a constant
  QMPoly R = reduce_to_scalar(ns);
  auto q = exact_divide(R, ns.E[0]);
  REQUIRE(q.has_value());
  CHECK(q->is_constant());

  // linear elimination: E2 = x2 - g(x1, t, u)
  NumeratorSystem lin = ns;
  QMPoly g = parse_poly(ns.ring, "1 + t*u*x1");
  lin.E[1] = parse_poly(ns.ring, "x2") - g;
  lin.E[0] = parse_poly(ns.ring, "(u - 1)*(1 - x1) + t*u*(x1*x2 - z0 - z1)");
  QMPoly R2 = reduce_to_scalar(lin);
  QMPoly expected = lin.E[0].substitute("x2", g);
  auto q2 = exact_divide(R2, expected);
  REQUIRE(q2.has_value());
  CHECK(q2->is_constant());

  // membership in <E1, E2> : Det^infinity
  Ideal<BigRat> I{lin.ring, lin.E};
  Ideal<BigRat> sat = saturate(I, build_det(lin));
  CHECK(ideal_contains(sat, R2));

  NumeratorSystem one = normalize(load_fixture("scalar.dde"), NormalizeMode::minimal);
  CHECK_THROWS(reduce_to_scalar(one));
}

TEST_CASE("solve: scalar fixture is certified twice over") {
  SolveReport rep = solve(load_fixture("scalar.dde"));
  CHECK(rep.status == SolveStatus::certified);
  CHECK(rep.certificate == Certificate::both);
  REQUIRE(rep.minimal.has_value());
  REQUIRE(rep.eliminant.has_value());
  CHECK(certify_divides(*rep.minimal, *rep.eliminant, "z0"));
  CHECK(!rep.deformation_used);
}

TEST_CASE("solve: forced deformation on the scalar fixture") {
  SolveOptions opts;
  opts.deform = DeformMode::on;
  SolveReport rep = solve(load_fixture("scalar.dde"), opts);
  CHECK(rep.status == SolveStatus::certified);
  CHECK(rep.deformation_used);
  REQUIRE(rep.eliminant.has_value());
  REQUIRE(rep.minimal.has_value());
  CHECK(rep.eliminant->degree("z0") == 3);
  CHECK(rep.minimal->degree("z0") == 3);
  CHECK(rep.certificate == Certificate::series_verified);

  // rerunning with another seed gives the same eliminant
  opts.modular.seed += 11;
  SolveReport again = solve(load_fixture("scalar.dde"), opts);
  REQUIRE(again.eliminant.has_value());
  CHECK(*again.eliminant == *rep.eliminant);
}

TEST_CASE("solve: hard without deformation is non-generic") {
  SolveOptions opts;
  opts.deform = DeformMode::off;
  opts.order = 44;
  opts.max_guess_dz = 4;
  opts.max_guess_dt = 6;
  SolveReport rep = solve(load_fixture("hard.dde"), opts);
  CHECK(rep.status == SolveStatus::non_generic);
  REQUIRE(rep.genericity.has_value());
  CHECK(std::holds_alternative<PositiveDimensional>(rep.genericity->dimension));
  // the guessed candidate is still reported, verified on the series
  REQUIRE(rep.minimal.has_value());
  CHECK(rep.certificate == Certificate::series_verified);
  CHECK(rep.minimal->degree("z0") == 4);
}

TEST_CASE("degree bound") {
  auto [a, b] = degree_bound(1, 1, 2);
  CHECK(a == 256);
  CHECK(b == 1);
  CHECK(degree_bound(1, 1, 1).first == 16);
  auto [c, d] = degree_bound(2, 1, 3);
  BigInt twelve20 = 1;
  for (int i = 0; i < 20; ++i) twelve20 *= 12;
  CHECK(c == twelve20);
  CHECK(d == 4);
  CHECK_THROWS(degree_bound(0, 1, 1));
}
