// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--skip-slow] [--only N]

#include "catsolve/kernel.hpp"
#include "catsolve/polyops.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace catsolve;

namespace {

const char* kCubic =
    "64*t^3*z0^3 + (48*t^3 - 72*t^2 + 2*t)*z0^2 - (15*t^3 - 9*t^2 - 19*t + 1)*z0 + t^3 + 27*t^2 - 19*t + 1";

DDESystem fixture(const std::string& name) {
  std::ifstream in(std::string(CATSOLVE_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dde(ss.str());
}

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

// ---------------------------------------------------------------- 1, 2

Check numerators() {
  Check c;
  NumeratorSystem ns = normalize(fixture("ex11.dde"), NormalizeMode::minimal);
  c.expect(ns.E.size() == 2, "two equations");
  c.expect(ns.E[0] == parse_poly(ns.ring, "(1 - x1)*(u - 1) + t*(2*u^2*x1^2 - u^2*z0 + 2*u^2*z1 - 2*u*x1^2 + u^2 + "
                                          "u*x1 - 2*u*z1 - u)"),
           "E1");
  c.expect(ns.E[1] == parse_poly(ns.ring, "x2*(1 - u) + t*(2*u^2*x1*x2 + u^2*x1 - 2*u*x1*x2 - u*x1 + u*x2 - u*z1)"),
           "E2");
  return c;
}

Check det_and_p() {
  Check c;
  NumeratorSystem ns = normalize(fixture("ex11.dde"), NormalizeMode::minimal);
  c.expect(build_det(ns) ==
               parse_poly(ns.ring, "(4*t*u^2*x1 - 4*t*u*x1 + t*u - u + 1)*(2*t*u^2*x1 - 2*t*u*x1 + t*u - u + 1)"),
           "Det");
  QMPoly p = build_p(ns);
  c.expect(p.coeffs_in(ns.ring->vars.index("u"))[0] == parse_poly(ns.ring, "-2*t*x1*x2 - t*x1 + t*x2 - t*z1 - x2"),
           "P at u^0");
  return c;
}

// ---------------------------------------------------------------- 3, 4

Check ex11_eliminant() {
  Check c;
  NumeratorSystem ns = normalize(fixture("ex11.dde"), NormalizeMode::minimal);
  EliminantInfo e = eliminant(duplicate(build_kernel_system(ns)), "z0");
  c.expect(e.poly.degree("z0") == 13, "z0-degree " + std::to_string(e.poly.degree("z0")));
  c.expect(e.poly.degree("t") == 14, "t-degree " + std::to_string(e.poly.degree("t")));
  c.expect(certify_divides(parse_poly(zt_ring("z0"), kCubic), e.poly, "z0"), "divisible by the cubic");
  return c;
}

Check ex11_guess() {
  Check c;
  TruncTSeries s = specialize(solve_series(fixture("ex11.dde"), 40)[0], BigRat(1), 0);
  auto g = guess_minpoly(s, 3, 3);
  QMPoly cubic = parse_poly(zt_ring("z0"), kCubic);
  c.expect(g.has_value() && g->poly == cubic, "guess equals the cubic");
  c.expect(verify_annihilation(cubic, s, 40), "annihilates mod t^40");
  return c;
}

// ---------------------------------------------------------------- 5, 6, 7

Check genericity() {
  Check c;
  NumeratorSystem hard = normalize(bind_params(fixture("hard.dde"), true), NormalizeMode::minimal);
  auto h = genericity_check(duplicate(build_kernel_system(hard)));
  c.expect(std::holds_alternative<PositiveDimensional>(h.dimension), "hard: " + to_string(h.dimension));
  NumeratorSystem ex = normalize(fixture("ex11.dde"), NormalizeMode::minimal);
  auto g = genericity_check(duplicate(build_kernel_system(ex)));
  c.expect(std::holds_alternative<ZeroDimensional>(g.dimension), "ex11: " + to_string(g.dimension));
  return c;
}

Check deformation() {
  Check c;
  auto [dsys, params] = deform(bind_params(fixture("hard.dde"), true), BigRat(1));
  c.expect(params.beta == 4, "beta " + std::to_string(params.beta));
  c.expect(params.alpha == 24, "alpha " + std::to_string(params.alpha));
  NumeratorSystem ns = normalize(dsys, NormalizeMode::deformation_ready);
  PuiseuxReport r = analyze_det_roots(dsys, ns, build_det(ns), 8);
  c.expect(r.status == PuiseuxStatus::certified, "certified");
  c.expect(r.total_distinct == 2, "distinct roots " + std::to_string(r.total_distinct));
  std::vector<BigRat> leading;
  for (const auto& root : r.roots) {
    c.expect(root.valuation == BigRat(1), "valuation " + root.valuation.to_string());
    c.expect(root.count == 1 && root.leading_minpoly.degree() == 1, "rational leading coefficient");
    if (root.leading_minpoly.degree() == 1)
      leading.push_back(-root.leading_minpoly.coeff(0) / root.leading_minpoly.coeff(1));
  }
  std::sort(leading.begin(), leading.end());
  c.expect(leading == std::vector<BigRat>{BigRat(1), BigRat(2)}, "leading coefficients {1, 2}");
  return c;
}

Check root_preservation() {
  Check c;
  DDESystem sys = fixture("ex11.dde");
  NumeratorSystem ns = normalize(sys, NormalizeMode::minimal);
  QMPoly R = reduce_to_scalar(ns);
  std::size_t N = 6;
  PuiseuxOptions opts;
  opts.expand_to = 3;
  PuiseuxReport rep = analyze_det_roots(sys, ns, build_det(ns), N, opts);
  c.expect(rep.status == PuiseuxStatus::certified && rep.branches.size() == 2, "two certified roots of Det");
  TruncBiSeries dR = eval_at_series(R.derivative("x1"), numerator_bindings(ns, solve_series(sys, N)), N);
  for (const auto& b : rep.branches)
    c.expect(eval_at_branch(dR, b).zero_below(2 * static_cast<long>(b.expansion.D)),
             "dR/dx1 vanishes mod t^2 at " + b.to_string());
  return c;
}

// ---------------------------------------------------------------- 8

Check scalar_case() {
  Check c;
  DDESystem sys = fixture("scalar.dde");
  SolveOptions opts;
  opts.order = 30;
  opts.max_guess_dz = 3;
  opts.max_guess_dt = 4;
  SolveReport rep = solve(sys, opts);
  NumeratorSystem ns = normalize(sys, NormalizeMode::minimal);
  QMPoly classical = classical_scalar_eliminant(ns, "z0");
  c.expect(rep.eliminant.has_value() && *rep.eliminant == classical, "pipeline equals the classical triple");
  TruncTSeries s = specialize(solve_series(sys, 30)[0], BigRat(0), 0);
  c.expect(rep.eliminant && verify_annihilation(*rep.eliminant, s, 30), "annihilates mod t^30");
  c.expect(rep.certificate == Certificate::both, "certificate " + to_string(rep.certificate));
  return c;
}

// ---------------------------------------------------------------- 9

QMPoly random_poly(std::mt19937_64& rng, const RingPtr& ring, unsigned max_deg) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<Term<BigRat>> terms;
  std::size_t n = ring->nvars();
  std::vector<unsigned> e(n, 0);
  while (true) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v)
      if (e[v]) m.set(v, static_cast<std::uint16_t>(e[v]));
    if (int x = coef(rng)) terms.push_back({m, BigRat(x)});
    std::size_t v = 0;
    while (v < n && e[v] == max_deg) e[v++] = 0;
    if (v == n) break;
    ++e[v];
  }
  return QMPoly::from_terms(ring, std::move(terms));
}

Check properties() {
  Check c;
  std::mt19937_64 rng(9);

  for (const char* name : {"ex11.dde", "hard.dde", "scalar.dde", "geometric.dde"}) {
    DDESystem sys = bind_params(fixture(name), true);
    bool zero = true;
    for (const auto& r : residuals(sys, solve_series(sys, 12), 12)) zero = zero && r.is_zero();
    c.expect(zero, std::string("residuals of ") + name);
  }

  RingPtr r = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<QMPoly> gens{random_poly(rng, r, 1), random_poly(rng, r, 1), random_poly(rng, r, 1)};
    Ideal<BigRat> gb = buchberger(gens, r);
    for (std::size_t i = 0; i < gb.gens.size(); ++i)
      for (std::size_t j = i + 1; j < gb.gens.size(); ++j) {
        const QMPoly& f = gb.gens[i];
        const QMPoly& g = gb.gens[j];
        Monomial l;
        for (std::size_t v = 0; v < 3; ++v) l.set(v, std::max(f.lm().e[v], g.lm().e[v]));
        QMPoly s = f.mul_term(quotient(l, f.lm()), g.lc()) - g.mul_term(quotient(l, g.lm()), f.lc());
        c.expect(reduce(s, gb.gens).is_zero(), "S-polynomial reduction");
      }
    QMPoly h = random_poly(rng, r, 1);
    if (!h.is_zero()) {
      Ideal<BigRat> small{r, {gens[0], gens[1]}};
      Ideal<BigRat> a = saturate(small, h), b = saturate(a, h);
      bool same = true;
      for (const auto& q : b.gens) same = same && ideal_contains(a, q);
      for (const auto& q : a.gens) same = same && ideal_contains(b, q);
      c.expect(same, "saturation idempotence");
    }
    QMPoly p = random_poly(rng, r, 1), q = random_poly(rng, r, 1);
    if (p.degree("x") > 0 && q.degree("x") > 0) {
      Ideal<BigRat> pq = buchberger(std::vector<QMPoly>{p, q}, r);
      c.expect(ideal_contains(pq, resultant(p, q, "x")), "resultant membership");
    }
    QMPoly a = random_poly(rng, r, 2), d = random_poly(rng, r, 1);
    if (d.degree("y") > 0) {
      auto pd = pseudo_divide(a, d, "y");
      c.expect(pd.multiplier * a == pd.quotient * d + pd.remainder, "pseudo-division identity");
    }
  }

  // guess and recover
  RingPtr zt = zt_ring("z0");
  std::uniform_int_distribution<int> coef(-9, 9);
  int built = 0, recovered = 0;
  while (built < 20) {
    int root = coef(rng);
    std::vector<Term<BigRat>> terms;
    for (unsigned i = 0; i <= 2; ++i)
      for (unsigned j = 0; j <= 2; ++j) {
        if (i + j == 0) continue;
        Monomial m;
        m.set(0, static_cast<std::uint16_t>(i));
        m.set(1, static_cast<std::uint16_t>(j));
        int v = coef(rng);
        terms.push_back({m, BigRat(v ? v : 2)});
      }
    QMPoly P = QMPoly::from_terms(zt, terms);
    P += QMPoly::constant(zt, -P.eval_var(1, BigRat(0)).eval_var(0, BigRat(root)).constant_term());
    BigRat lambda = P.derivative(0).eval_var(1, BigRat(0)).eval_var(0, BigRat(root)).constant_term();
    if (lambda.is_zero()) continue;
    ++built;
    std::size_t N = 9 + 8 + 4;
    TruncTSeries s(N);
    s.coeff(0) = BigRat(root);
    for (std::size_t n = 1; n < N; ++n) {
      std::map<std::string, TruncTSeries> b{{"z0", s.truncated(n + 1)}};
      s.coeff(n) = -eval_at_series(P, b, n + 1).coeff(n).coeff(0) / lambda;
    }
    auto g = guess_minpoly(s, 2, 2);
    if (g && certify_divides(g->poly, P, "z0") && (g->dz < 2 || g->dt < 2 || g->poly == normalize_primitive(P)))
      ++recovered;
  }
  c.expect(recovered == 20, "guess round trips " + std::to_string(recovered) + "/20");
  return c;
}

// ---------------------------------------------------------------- 10

/// Decimal big integers as base-1e9 limbs, independent of GMP.
struct Limbs {
  std::vector<std::uint64_t> d{1};
  void mul(std::uint64_t m) {
    std::uint64_t carry = 0;
    for (auto& x : d) {
      std::uint64_t v = x * m + carry;
      x = v % 1000000000ULL;
      carry = v / 1000000000ULL;
    }
    while (carry) {
      d.push_back(carry % 1000000000ULL);
      carry /= 1000000000ULL;
    }
  }
  std::string str() const {
    std::string s = std::to_string(d.back());
    for (std::size_t i = d.size() - 1; i-- > 0;) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(d[i]));
      s += buf;
    }
    return s;
  }
};

Check bound() {
  Check c;
  auto [a, b] = degree_bound(1, 1, 2);
  c.expect(a == 256 && b == 1, "degree_bound(1, 1, 2) = 256");
  std::mt19937_64 rng(77);
  for (int i = 0; i < 5; ++i) {
    unsigned n = 1 + rng() % 3, k = 1 + rng() % 2, delta = 1 + rng() % 4;
    Limbs num, den;
    unsigned e = 2 * n * n * n * k * k + 2 * n;
    for (unsigned j = 0; j < e; ++j) num.mul(2ULL * n * k * delta);
    std::uint64_t f = 1;
    for (unsigned j = 2; j <= n * k; ++j) f *= j;
    for (unsigned j = 0; j < n * k; ++j) den.mul(f);
    auto [x, y] = degree_bound(n, k, delta);
    std::string tag = "(" + std::to_string(n) + ", " + std::to_string(k) + ", " + std::to_string(delta) + ")";
    c.expect(x.get_str() == num.str() && y.get_str() == den.str(), "triple " + tag);
  }
  return c;
}

struct Criterion {
  int id;
  bool slow;
  const char* title;
  double limit_seconds;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  bool skip_slow = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--skip-slow")) skip_slow = true;
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--skip-slow] [--only N]\n";
      return 1;
    }
  }
  std::vector<Criterion> all{
      {1, false, "ex11 numerators E1, E2", 1, numerators},
      {2, false, "ex11 Det and P", 1, det_and_p},
      {3, true, "ex11 eliminant: degrees (13, 14), divisible by the cubic", 3600, ex11_eliminant},
      {4, false, "ex11 guess-and-prove of the cubic at order 40", 60, ex11_guess},
      {5, false, "genericity: hard positive-dimensional, ex11 zero-dimensional", 1200, genericity},
      {6, false, "deformed hard: alpha, beta and two Puiseux roots", 300, deformation},
      {7, false, "scalar reduction keeps the kernel roots", 300, root_preservation},
      {8, false, "scalar case equals the classical triple", 120, scalar_case},
      {9, false, "property suites", 600, properties},
      {10, false, "degree bound", 1, bound},
  };
  int failed = 0;
  for (const auto& cr : all) {
    if (only && cr.id != only) continue;
    std::string label = "criterion " + std::to_string(cr.id) + (cr.slow ? " [slow]" : "");
    if (cr.slow && skip_slow) {
      std::cout << label << ": SKIP (" << cr.title << ")" << std::endl;
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    Check res;
    try {
      res = cr.run();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) res.expect(false, "over the runtime target");
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << label << ": " << (res.ok ? "PASS" : "FAIL") << " (" << cr.title << ", " << t << ")";
    if (!res.ok) std::cout << " " << res.detail;
    std::cout << std::endl;
    if (!res.ok) ++failed;
  }
  return failed ? 1 : 0;
}
