#include "support.hpp"

#include "catsolve/algnum.hpp"
#include "catsolve/polyops.hpp"
#include "catsolve/ratfunc.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace catsolve;
using testsupport::random_poly;

TEST_CASE("rationals: parsing, printing, canonical form") {
  CHECK(BigRat::parse("6/-4").to_string() == "-3/2");
  CHECK((BigRat(1, 3) + BigRat(1, 6)) == BigRat(1, 2));
  CHECK(BigRat(7).inverse() == BigRat(1, 7));
  CHECK_THROWS(BigRat(0).inverse());
  CHECK(factorial(6) == 720);
}

TEST_CASE("prime field arithmetic") {
  std::uint32_t p = nth_large_prime(0);
  Fp a(12345, p), b(678, p);
  CHECK(((a / b) * b) == a);
  CHECK((a * a.inverse()).value() == 1);
  CHECK(nth_large_prime(1) != p);
  CHECK((Fp() + a) == a);  // modulus-free zero adopts the modulus
}

TEST_CASE("univariate gcd, xgcd and squarefree decomposition") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  auto rnd = [&](int deg) {
    std::vector<BigRat> v;
    for (int i = 0; i <= deg; ++i) v.push_back(BigRat(c(rng)));
    v.back() = BigRat(c(rng) == 0 ? 1 : 3);
    return QPoly(v);
  };
  for (int trial = 0; trial < 20; ++trial) {
    QPoly g = rnd(2), a = rnd(3) * g, b = rnd(2) * g;
    auto [d, s, t] = xgcd(a, b);
    CHECK((s * a + t * b) == d);
    CHECK((a % d).is_zero());
    CHECK((b % d).is_zero());
    CHECK(((a % g.monic()).is_zero()));
  }
  // (x - 1)^3 (x + 2)
  QPoly x = QPoly::monomial(BigRat(1), 1);
  QPoly p = (x - QPoly(BigRat(1))) * (x - QPoly(BigRat(1))) * (x - QPoly(BigRat(1))) * (x + QPoly(BigRat(2)));
  auto sq = squarefree_decomposition(p);
  REQUIRE(sq.size() == 3);
  CHECK(sq[0] == (x + QPoly(BigRat(2))));
  CHECK(sq[1].degree() == 0);
  CHECK(sq[2] == (x - QPoly(BigRat(1))));
}

TEST_CASE("rational functions in t") {
  RatFuncT t = RatFuncT::t();
  RatFuncT one(1);
  RatFuncT f = (one + t) / (one - t * t);
  CHECK(f == one / (one - t));
  CHECK((f * f.inverse()).is_one());
  CHECK(f.eval(BigRat(3)) == BigRat(-1, 2));
}

TEST_CASE("algebraic numbers") {
  QPoly x = QPoly::monomial(BigRat(1), 1);
  auto m = AlgNum::make_modulus(x * x - QPoly(BigRat(2)));
  AlgNum th = AlgNum::generator(m);
  CHECK((th * th) == AlgNum(BigRat(2)));
  CHECK((th * th * th) == AlgNum(QPoly::monomial(BigRat(2), 1), m));
  AlgNum y = th + AlgNum(BigRat(3));
  CHECK((y * y.inverse()).is_one());
  CHECK(!th.is_rational());
}

TEST_CASE("parse and print round trip") {
  RingPtr r = make_ring({"x", "y", "t"});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 25; ++i) {
    QMPoly p = random_poly(rng, r, 3);
    CHECK(parse_poly(r, p.to_string()) == p);
  }
  CHECK(parse_poly(r, "(x + y)^2 - x^2 - 2*x*y").to_string() == "y^2");
  CHECK(parse_poly(r, "x/2 + 3/4").to_string() == "1/2*x + 3/4");
  CHECK_THROWS(parse_poly(r, "x + w"));
  CHECK_THROWS(parse_poly(r, "x / y"));
}

TEST_CASE("multivariate ring laws on random polynomials") {
  RingPtr r = make_ring({"x", "y", "z"});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 15; ++i) {
    QMPoly a = random_poly(rng, r, 2), b = random_poly(rng, r, 2), c = random_poly(rng, r, 2);
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a - a).is_zero());
    if (!b.is_zero()) {
      auto q = exact_divide(a * b, b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
  }
}

TEST_CASE("pseudo-division re-expansion identity") {
  RingPtr r = make_ring({"x", "y", "t"});
  std::mt19937_64 rng(13);
  for (int i = 0; i < 25; ++i) {
    QMPoly p = random_poly(rng, r, 3), q = random_poly(rng, r, 2);
    if (q.degree("x") < 1 || p.is_zero()) continue;
    auto pd = pseudo_divide(p, q, "x");
    CHECK((pd.multiplier * p) == (pd.quotient * q + pd.remainder));
    CHECK(pd.remainder.degree("x") < q.degree("x"));
  }
}

namespace {

// Leibniz expansion over all permutations.
QMPoly leibniz(const PolyMatrix<BigRat>& m, const RingPtr& ring) {
  std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  QMPoly acc(ring);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    QMPoly term = QMPoly::constant(ring, BigRat(inversions % 2 ? -1 : 1));
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST_CASE("fraction-free determinant agrees with the Leibniz formula") {
  RingPtr r = make_ring({"x", "y"});
  std::mt19937_64 rng(17);
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    PolyMatrix<BigRat> m(n);
    for (auto& row : m)
      for (std::size_t j = 0; j < n; ++j) row.push_back(random_poly(rng, r, 1, 3, 0.5));
    CHECK(pdet(m, r) == leibniz(m, r));
  }
}

TEST_CASE("resultants: common roots and ideal membership") {
  RingPtr r = make_ring({"x", "y"});
  QMPoly p = parse_poly(r, "x^2 + y^2 - 5");
  QMPoly q = parse_poly(r, "x*y - 2");
  QMPoly res = resultant(p, q, "x");
  // y = 1 (x = 2) and y = 2 (x = 1) are common solutions
  CHECK(res.eval_var(1, BigRat(1)).is_zero());
  CHECK(res.eval_var(1, BigRat(2)).is_zero());
  CHECK(res.degree("x") == 0);
  QMPoly shared = parse_poly(r, "x - y");
  CHECK(resultant(p * shared, q * shared, "x").is_zero());
}

TEST_CASE("gcd divides both arguments and recovers a planted factor") {
  RingPtr r = make_ring({"x", "y", "t"});
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    QMPoly g = random_poly(rng, r, 1), a = random_poly(rng, r, 1), b = random_poly(rng, r, 1);
    if (g.is_constant() || a.is_zero() || b.is_zero()) continue;
    QMPoly d = poly_gcd(a * g, b * g);
    CHECK(exact_divide(a * g, d).has_value());
    CHECK(exact_divide(b * g, d).has_value());
    CHECK(exact_divide(d, g.monic()).has_value());
  }
  QMPoly sq = parse_poly(r, "(x - y)^2*(x + t)");
  CHECK(squarefree_part(sq, "x") == parse_poly(r, "(x - y)*(x + t)").monic());
}
