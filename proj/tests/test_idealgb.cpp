#include "support.hpp"

#include "catsolve/polyops.hpp"

#include <doctest.h>

using namespace catsolve;
using testsupport::random_poly;

namespace {

template <class F>
MPoly<F> s_polynomial(const MPoly<F>& f, const MPoly<F>& g) {
  Monomial l;
  for (std::size_t v = 0; v < f.nvars(); ++v) l.set(v, std::max(f.lm().e[v], g.lm().e[v]));
  return f.mul_term(quotient(l, f.lm()), g.lc()) - g.mul_term(quotient(l, g.lm()), f.lc());
}

template <class F>
void check_groebner(const Ideal<F>& gb) {
  for (std::size_t i = 0; i < gb.gens.size(); ++i)
    for (std::size_t j = i + 1; j < gb.gens.size(); ++j)
      CHECK(reduce(s_polynomial(gb.gens[i], gb.gens[j]), gb.gens).is_zero());
}

}  // namespace

TEST_CASE("Buchberger output: S-polynomials reduce to zero, generators are members") {
  RingPtr r = make_ring({"x", "y", "z"});
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<QMPoly> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_poly(rng, r, 1, 3, 0.4));
    Ideal<BigRat> gb = buchberger(gens, r);
    check_groebner(gb);
    for (const auto& g : gens) CHECK(ideal_contains(gb, g));
  }
}

TEST_CASE("Buchberger over a prime field and with a lex order") {
  std::uint32_t p = nth_large_prime(2);
  RingPtr r = make_ring({"x", "y", "z"}, MonomialOrder::lex());
  QMPoly a = parse_poly(r, "x^2 + y*z - 2"), b = parse_poly(r, "y^2 - x*z + 1"), c = parse_poly(r, "z^2 - x - y");
  auto to_fp = [&](const QMPoly& q) {
    return q.map_coeffs<Fp>(r, [&](const BigRat& v) { return Fp(v.num().get_si(), p) / Fp(v.den().get_si(), p); });
  };
  Ideal<Fp> gbp = buchberger(std::vector<MPoly<Fp>>{to_fp(a), to_fp(b), to_fp(c)}, r);
  check_groebner(gbp);
  Ideal<BigRat> gbq = buchberger(std::vector<QMPoly>{a, b, c}, r);
  check_groebner(gbq);
  // lex basis of a zero-dimensional ideal ends in a univariate polynomial
  bool univariate = false;
  for (const auto& g : gbq.gens)
    if (!g.involves("x") && !g.involves("y")) univariate = true;
  CHECK(univariate);
  CHECK(std::holds_alternative<ZeroDimensional>(dimension_check(gbq, {"x", "y", "z"})));
  CHECK(std::get<ZeroDimensional>(dimension_check(gbq, {"x", "y", "z"})).degree ==
        std::get<ZeroDimensional>(dimension_check(gbp, {"x", "y", "z"})).degree);
}

TEST_CASE("elimination: twisted cubic") {
  RingPtr r = make_ring({"s", "x", "y", "z"});
  Ideal<BigRat> I{r, {parse_poly(r, "x - s"), parse_poly(r, "y - s^2"), parse_poly(r, "z - s^3")}};
  auto elim = eliminate(I, {"x", "y", "z"});
  RingPtr xyz = make_ring({"x", "y", "z"});
  Ideal<BigRat> E = buchberger([&] {
    std::vector<QMPoly> v;
    for (const auto& g : elim) v.push_back(g.to_ring(xyz));
    return v;
  }(), xyz);
  CHECK(ideal_contains(E, parse_poly(xyz, "y - x^2")));
  CHECK(ideal_contains(E, parse_poly(xyz, "z - x^3")));
  CHECK(!ideal_contains(E, parse_poly(xyz, "z - x^2")));
}

TEST_CASE("saturation is idempotent and removes the saturated component") {
  RingPtr r = make_ring({"x", "y"});
  // (x) ∩ (x - 1, y) saturated by x leaves (x - 1, y)
  Ideal<BigRat> I{r, {parse_poly(r, "x*(x - 1)"), parse_poly(r, "x*y")}};
  QMPoly g = parse_poly(r, "x");
  Ideal<BigRat> S = saturate(I, g);
  CHECK(ideal_contains(S, parse_poly(r, "x - 1")));
  CHECK(ideal_contains(S, parse_poly(r, "y")));
  Ideal<BigRat> S2 = saturate(S, g);
  for (const auto& h : S2.gens) CHECK(ideal_contains(S, h));
  for (const auto& h : S.gens) CHECK(ideal_contains(S2, h));

  std::mt19937_64 rng(41);
  RingPtr r3 = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 4; ++trial) {
    Ideal<BigRat> J{r3, {random_poly(rng, r3, 1, 3, 0.5), random_poly(rng, r3, 1, 3, 0.5)}};
    QMPoly h = random_poly(rng, r3, 1, 2, 0.5);
    if (h.is_zero() || J.gens[0].is_zero() || J.gens[1].is_zero()) continue;
    Ideal<BigRat> A = saturate(J, h), B = saturate(A, h);
    for (const auto& q : B.gens) CHECK(ideal_contains(A, q));
  }
}

TEST_CASE("resultant lies in the ideal of its arguments") {
  RingPtr r = make_ring({"x", "y", "t"});
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    QMPoly p = random_poly(rng, r, 1, 3, 0.6), q = random_poly(rng, r, 1, 3, 0.6);
    if (p.degree("x") < 1 || q.degree("x") < 1) continue;
    QMPoly res = resultant(p, q, "x");
    Ideal<BigRat> gb = buchberger(std::vector<QMPoly>{p, q}, r);
    CHECK(ideal_contains(gb, res));
  }
}

TEST_CASE("dimension of positive-dimensional and unit ideals") {
  RingPtr r = make_ring({"x", "y", "z"});
  Ideal<BigRat> line = buchberger(std::vector<QMPoly>{parse_poly(r, "x - y"), parse_poly(r, "z")}, r);
  auto d = dimension_check(line, {"x", "y", "z"});
  REQUIRE(std::holds_alternative<PositiveDimensional>(d));
  CHECK(std::get<PositiveDimensional>(d).independent.size() == 1);
  Ideal<BigRat> unit = buchberger(std::vector<QMPoly>{parse_poly(r, "x"), parse_poly(r, "x - 1")}, r);
  CHECK(std::get<ZeroDimensional>(dimension_check(unit, {"x", "y", "z"})).degree == 0);
}

TEST_CASE("budget exhaustion is reported") {
  RingPtr r = make_ring({"x", "y", "z"});
  GbBudget tiny;
  tiny.max_pairs = 1;
  std::vector<QMPoly> gens{parse_poly(r, "x*y - z"), parse_poly(r, "x*z - y"), parse_poly(r, "y*z - x")};
  CHECK_THROWS_AS(buchberger(gens, r, tiny), BudgetExceeded);
}
