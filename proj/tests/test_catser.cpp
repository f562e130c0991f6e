#include "support.hpp"

#include <doctest.h>

using namespace catsolve;
using testsupport::load_fixture;

namespace {

const char* kFixtures[] = {"ex11.dde", "hard.dde", "scalar.dde", "geometric.dde"};

QPoly upoly(std::initializer_list<int> c) {
  std::vector<BigRat> v;
  for (int x : c) v.push_back(BigRat(x));
  return QPoly(v);
}

}  // namespace

TEST_CASE("truncated series arithmetic") {
  TruncTSeries one_minus_t(std::vector<BigRat>{BigRat(1), BigRat(-1), BigRat(0), BigRat(0), BigRat(0)});
  TruncTSeries geo(std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(1), BigRat(1), BigRat(1)});
  TruncTSeries one(std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(0), BigRat(0), BigRat(0)});
  CHECK((one_minus_t * geo) == one);
  CHECK(geo.to_string() == "1 + t + t^2 + t^3 + t^4 + O(t^5)");

  TruncBiSeries s(3);
  s.coeff(0) = upoly({1, 2, 3});  // 1 + 2u + 3u^2
  TruncBiSeries d = s.delta(BigRat(1));
  // (3u^2 + 2u - 5)/(u - 1) = 3u + 5
  CHECK(d.coeff(0) == upoly({5, 3}));
  CHECK(specialize(s, BigRat(1), 0).coeff(0) == BigRat(6));
  CHECK(specialize(s, BigRat(1), 1).coeff(0) == BigRat(8));
  CHECK(s.translate_u(BigRat(1)).coeff(0) == upoly({6, 8, 3}));
}

TEST_CASE("fixed-point residuals vanish on every fixture") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    DDESystem sys = bind_params(load_fixture(name), true);
    for (std::size_t N : {6u, 15u}) {
      auto F = solve_series(sys, N);
      for (const auto& r : residuals(sys, F, N)) CHECK(r.is_zero());
    }
  }
}

TEST_CASE("series schedules agree") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    DDESystem sys = bind_params(load_fixture(name), true);
    std::size_t N = 9;
    auto a = solve_series(sys, N, Schedule::jacobi);
    auto b = solve_series(sys, N, Schedule::gauss_seidel);
    auto c = solve_series(sys, N, Schedule::online);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] == b[i]);
      CHECK(a[i] == c[i]);
    }
  }
}

TEST_CASE("known series") {
  auto F = solve_series(load_fixture("geometric.dde"), 5);
  CHECK(specialize(F[0], BigRat(0), 0).to_string() == "1 + t + t^2 + t^3 + t^4 + O(t^5)");

  DDESystem ex = load_fixture("ex11.dde");
  auto G = solve_series(ex, 40);
  TruncTSeries s = specialize(G[0], BigRat(1), 0);
  CHECK(s.coeff(0) == BigRat(1));
  QMPoly cubic = parse_poly(zt_ring("z0"), testsupport::kEx11Cubic);
  CHECK(verify_annihilation(cubic, s, 40));
}

TEST_CASE("Puiseux: ramified and unramified roots") {
  std::size_t N = 10;
  // u^2 - t: two conjugate roots of valuation 1/2
  TruncTSeries a0(N), a1(N), a2(N);
  a0.coeff(1) = BigRat(-1);
  a2.coeff(0) = BigRat(1);
  PuiseuxReport r = puiseux_roots({a0, a1, a2});
  CHECK(r.status == PuiseuxStatus::certified);
  CHECK(r.total_distinct == 2);
  unsigned counted = 0;
  for (const auto& root : r.roots) {
    CHECK(root.valuation == BigRat(1, 2));
    counted += root.count;
  }
  CHECK(counted == 2);

  // (u - t)(u - 2t) = u^2 - 3t u + 2t^2
  TruncTSeries b0(N), b1(N), b2(N);
  b0.coeff(2) = BigRat(2);
  b1.coeff(1) = BigRat(-3);
  b2.coeff(0) = BigRat(1);
  PuiseuxReport q = puiseux_roots({b0, b1, b2});
  CHECK(q.total_distinct == 2);
  REQUIRE(q.roots.size() == 2);
  for (const auto& root : q.roots) CHECK(root.valuation == BigRat(1));

  // the root u = 0 is not counted
  TruncTSeries c0(N), c1(N);
  c1.coeff(0) = BigRat(1);
  CHECK(puiseux_roots({c0, c1}).total_distinct == 0);
}

TEST_CASE("rational roots by divisor enumeration") {
  auto r = rational_roots(upoly({-6, 1, 1}));  // (u + 3)(u - 2)
  REQUIRE(r.has_value());
  CHECK(r->size() == 2);
  auto q = rational_roots(upoly({-2, 0, 3}));
  REQUIRE(q.has_value());
  CHECK(q->empty());
}

TEST_CASE("Det and P vanish at the certified kernel roots of ex11") {
  DDESystem sys = load_fixture("ex11.dde");
  NumeratorSystem ns = normalize(sys, NormalizeMode::minimal);
  KernelSystem ks = build_kernel_system(ns);
  std::size_t N = 8;
  PuiseuxOptions opts;
  opts.expand_to = 4;
  PuiseuxReport rep = analyze_det_roots(sys, ns, ks.det, N, opts);
  REQUIRE(rep.status == PuiseuxStatus::certified);
  CHECK(rep.total_distinct == 2);
  auto bind = numerator_bindings(ns, solve_series(sys, N));
  TruncBiSeries det = eval_at_series(strip_catalytic_power(ks.det, ns).first, bind, N);
  TruncBiSeries p = eval_at_series(ks.p, bind, N);
  REQUIRE(rep.branches.size() == 2);
  for (const auto& b : rep.branches) {
    CAPTURE(b.to_string());
    PSer d = eval_at_branch(det, b), q = eval_at_branch(p, b);
    CHECK(d.zero_below(static_cast<long>(3 * b.expansion.D)));
    CHECK(q.zero_below(static_cast<long>(3 * b.expansion.D)));
  }
}
