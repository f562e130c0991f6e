#include "support.hpp"

#include "catsolve/polyops.hpp"

#include <doctest.h>

using namespace catsolve;
using testsupport::kEx11Cubic;
using testsupport::load_fixture;

namespace {

TruncTSeries geometric(std::size_t N) {
  TruncTSeries s(N);
  for (std::size_t i = 0; i < N; ++i) s.coeff(i) = BigRat(1);
  return s;
}

/// The branch of P(z, t) = 0 through (z0, 0), computed coefficient by
/// coefficient from the simple root z0 of P(z, 0).
TruncTSeries branch(const QMPoly& P, const BigRat& z0, std::size_t N) {
  QMPoly dz = P.derivative("z0");
  std::map<std::string, TruncTSeries> at0{{"z0", TruncTSeries(std::vector<BigRat>{z0})}};
  BigRat lambda = eval_at_series(dz, at0, 1).coeff(0).coeff(0);
  REQUIRE(!lambda.is_zero());
  TruncTSeries s(N);
  s.coeff(0) = z0;
  for (std::size_t n = 1; n < N; ++n) {
    std::map<std::string, TruncTSeries> b{{"z0", s.truncated(n + 1)}};
    BigRat r = eval_at_series(P, b, n + 1).coeff(n).coeff(0);
    s.coeff(n) = -r / lambda;
  }
  return s;
}

}  // namespace

TEST_CASE("rational series: 1/(1-t)") {
  auto g = guess_minpoly(geometric(20), 1, 1, 8, "z0");
  REQUIRE(g.has_value());
  CHECK(g->poly == normalize_primitive(parse_poly(zt_ring("z0"), "(1 - t)*z0 - 1")));
  CHECK(verify_annihilation(parse_poly(zt_ring("z0"), "(1 - t)*z0 - 1"), geometric(20), 20));
}

TEST_CASE("the ex11 cubic from 40 coefficients") {
  auto F = solve_series(load_fixture("ex11.dde"), 40);
  TruncTSeries s = specialize(F[0], BigRat(1), 0);
  QMPoly cubic = parse_poly(zt_ring("z0"), kEx11Cubic);
  auto g = guess_minpoly(s, 3, 3);
  REQUIRE(g.has_value());
  CHECK(g->poly == cubic);
  CHECK(g->dz == 3);
  CHECK(g->dt == 3);
  CHECK(verify_annihilation(g->poly, s, 40));

  // perturbing one coefficient breaks the annihilation
  QMPoly bumped = cubic + parse_poly(zt_ring("z0"), "t^2*z0");
  CHECK(!verify_annihilation(bumped, s, 40));

  CHECK_THROWS(guess_minpoly(s, 6, 6));
  CHECK(!guess_minpoly(s, 2, 2).has_value());
  auto sweep = guess_sweep(s, 4, 4);
  REQUIRE(sweep.has_value());
  CHECK(sweep->poly == cubic);
}

TEST_CASE("guess and recover: 20 random bidegree (2, 2) polynomials") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> c(-9, 9);
  RingPtr ring = zt_ring("z0");
  int recovered = 0, built = 0;
  while (built < 20) {
    // z0 = r is a simple root of P(z, 0)
    int r = c(rng);
    std::vector<Term<BigRat>> terms;
    for (unsigned i = 0; i <= 2; ++i)
      for (unsigned j = 0; j <= 2; ++j) {
        if (i == 0 && j == 0) continue;
        Monomial m;
        m.set(0, static_cast<std::uint16_t>(i));
        m.set(1, static_cast<std::uint16_t>(j));
        int v = c(rng);
        if (v == 0) v = 1;
        terms.push_back({m, BigRat(v)});
      }
    QMPoly P = QMPoly::from_terms(ring, terms);
    BigRat shift = -P.eval_var(1, BigRat(0)).eval_var(0, BigRat(r)).constant_term();
    P += QMPoly::constant(ring, shift);
    QMPoly P0 = P.eval_var(1, BigRat(0));
    if (P0.derivative(0).eval_var(0, BigRat(r)).is_zero()) continue;
    ++built;
    TruncTSeries s = branch(P, BigRat(r), 9 + 8 + 6);
    auto g = guess_minpoly(s, 2, 2);
    CAPTURE(P.to_string());
    REQUIRE(g.has_value());
    // an associate of P, or of the factor of P that the branch annihilates
    bool ok = certify_divides(g->poly, P, "z0") && verify_annihilation(g->poly, s, s.order());
    if (g->dz == 2 && g->dt == 2) ok = ok && g->poly == normalize_primitive(P);
    if (ok) ++recovered;
  }
  CHECK(recovered == 20);
}

TEST_CASE("divisibility certificates") {
  RingPtr ring = zt_ring("z0");
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    QMPoly p = testsupport::random_poly(rng, ring, 2), q = testsupport::random_poly(rng, ring, 2);
    if (p.degree("z0") < 1 || q.is_zero()) continue;
    CHECK(certify_divides(p, p * q, "z0"));
  }
  QMPoly a = parse_poly(ring, "z0^2 - t"), b = parse_poly(ring, "z0^2 - 2*t*z0 + 1");
  CHECK(!resultant(a, b, "z0").is_zero());
  CHECK(!certify_divides(a, b, "z0"));
  CHECK_THROWS(certify_divides(parse_poly(ring, "t"), b, "z0"));
}

TEST_CASE("normalization is idempotent") {
  RingPtr ring = zt_ring("z0");
  QMPoly p = parse_poly(ring, "-6/5*z0^2*t + 3/10*z0 - 9");
  QMPoly n = normalize_primitive(p);
  CHECK(n == parse_poly(ring, "4*z0^2*t - z0 + 30"));
  CHECK(normalize_primitive(n) == n);
}
