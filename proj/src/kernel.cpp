#include "catsolve/kernel.hpp"

#include "catsolve/polyops.hpp"
#include "catsolve/ratfunc.hpp"

#include <chrono>
#include <random>
#include <set>
#include <stdexcept>

namespace catsolve {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

QMPoly var_of(const RingPtr& ring, const std::string& name) { return QMPoly::var(ring, name, BigRat(1)); }

PolyMatrix<BigRat> jacobian(const NumeratorSystem& ns, bool replace_last_by_u) {
  PolyMatrix<BigRat> m;
  for (std::size_t i = 0; i < ns.n; ++i) {
    std::vector<QMPoly> row;
    for (std::size_t j = 0; j < ns.n; ++j) {
      bool last = j + 1 == ns.n;
      row.push_back(ns.E[i].derivative(replace_last_by_u && last ? std::string("u") : ns.x_name(j)));
    }
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

QMPoly build_det(const NumeratorSystem& ns) { return pdet(jacobian(ns, false), ns.ring); }

QMPoly build_p(const NumeratorSystem& ns) { return pdet(jacobian(ns, true), ns.ring); }

KernelSystem build_kernel_system(const NumeratorSystem& ns) {
  if (ns.k == 0) throw std::invalid_argument("kernel method: the system has no divided difference (k = 0)");
  for (const auto& name : ns.ring->vars.names()) {
    bool known = name == "t" || name == "u" || name[0] == 'x' || name[0] == 'z';
    if (!known) throw UnboundParameter(name);
  }
  KernelSystem ks{ns, build_det(ns), build_p(ns), {}};
  ks.S = ns.E;
  ks.S.push_back(ks.det);
  ks.S.push_back(ks.p);
  return ks;
}

DuplicatedSystem duplicate(const KernelSystem& ks) {
  const NumeratorSystem& ns = ks.base;
  DuplicatedSystem ds;
  ds.n = ns.n;
  ds.copies = ns.n * ns.k;
  for (unsigned j = 0; j < ns.n * ds.copies; ++j) ds.x_names.push_back("x" + std::to_string(j + 1));
  for (unsigned i = 0; i < ds.copies; ++i) ds.u_names.push_back("u" + std::to_string(i + 1));
  for (unsigned j = 0; j < ns.n * ns.k; ++j) ds.z_names.push_back(ns.z_name(j));
  std::vector<std::string> names = ds.x_names;
  names.insert(names.end(), ds.u_names.begin(), ds.u_names.end());
  names.insert(names.end(), ds.z_names.begin(), ds.z_names.end());
  names.push_back("t");
  ds.ring = make_ring(names);

  const VarTable& src = ns.ring->vars;
  for (unsigned c = 0; c < ds.copies; ++c) {
    std::vector<QMPoly> images;
    for (std::size_t v = 0; v < src.size(); ++v) {
      const std::string& name = src.name(v);
      if (name == "u") {
        images.push_back(var_of(ds.ring, ds.u_names[c]));
      } else if (name[0] == 'x') {
        unsigned j = static_cast<unsigned>(std::stoul(name.substr(1)));
        images.push_back(var_of(ds.ring, "x" + std::to_string(ns.n * c + j)));
      } else {
        images.push_back(var_of(ds.ring, name));
      }
    }
    for (const auto& s : ks.S) ds.Sdup.push_back(compose(s, ds.ring, images));
  }
  return ds;
}

SaturatedSystem saturated_system(const DuplicatedSystem& ds) {
  SaturatedSystem sat;
  std::vector<std::string> names = ds.x_names;
  names.insert(names.end(), ds.u_names.begin(), ds.u_names.end());
  bool need_m = ds.copies > 1;
  if (need_m) names.push_back("m");
  names.insert(names.end(), ds.z_names.begin(), ds.z_names.end());
  sat.unknowns = names;
  names.push_back("t");
  sat.ring = make_ring(names);
  for (const auto& p : ds.Sdup) sat.gens.push_back(p.to_ring(sat.ring));
  if (need_m) {
    QMPoly prod = QMPoly::constant(sat.ring, BigRat(1));
    for (std::size_t i = 0; i < ds.u_names.size(); ++i)
      for (std::size_t j = i + 1; j < ds.u_names.size(); ++j)
        prod *= var_of(sat.ring, ds.u_names[i]) - var_of(sat.ring, ds.u_names[j]);
    sat.gens.push_back(var_of(sat.ring, "m") * prod - QMPoly::constant(sat.ring, BigRat(1)));
  }
  return sat;
}

// ------------------------------------------------------ modular layer

namespace {

std::optional<Fp> rat_mod(const BigRat& c, std::uint32_t p) {
  unsigned long d = mpz_fdiv_ui(c.den().get_mpz_t(), p);
  if (d == 0) return std::nullopt;
  unsigned long n = mpz_fdiv_ui(c.num().get_mpz_t(), p);
  return Fp(static_cast<std::int64_t>(n), p) / Fp(static_cast<std::int64_t>(d), p);
}

std::optional<MPoly<Fp>> to_modular(const QMPoly& q, const RingPtr& target, std::uint32_t p, std::uint32_t t0) {
  std::size_t tv = q.vars().index("t");
  std::vector<int> map(q.nvars(), -1);
  for (std::size_t v = 0; v < q.nvars(); ++v)
    if (v != tv) map[v] = static_cast<int>(target->vars.index(q.vars().name(v)));
  std::vector<Fp> tpow{Fp(1, p)};
  std::vector<Term<Fp>> out;
  for (const auto& t : q.terms()) {
    auto c = rat_mod(t.coeff, p);
    if (!c) return std::nullopt;
    while (tpow.size() <= t.mono[tv]) tpow.push_back(tpow.back() * Fp(t0, p));
    Term<Fp> r{Monomial{}, *c * tpow[t.mono[tv]]};
    if (r.coeff.is_zero()) continue;
    for (std::size_t v = 0; v < q.nvars(); ++v)
      if (v != tv && t.mono[v]) r.mono.set(static_cast<std::size_t>(map[v]), t.mono[v]);
    out.push_back(r);
  }
  return MPoly<Fp>::from_terms(target, std::move(out));
}

/// Monic minimal polynomial of the variable `var` in the quotient by a
/// zero-dimensional Groebner basis; coefficients of z^0..z^d.
std::vector<Fp> minimal_polynomial_mod(const Ideal<Fp>& gb, std::size_t var, std::uint32_t p, std::size_t max_degree) {
  std::map<std::array<std::uint16_t, kMaxVars>, std::size_t> column;
  auto to_vector = [&](const MPoly<Fp>& f) {
    std::vector<Fp> v(column.size(), Fp(0, p));
    for (const auto& t : f.terms()) {
      auto [it, inserted] = column.emplace(t.mono.e, column.size());
      if (it->second >= v.size()) v.resize(it->second + 1, Fp(0, p));
      v[it->second] = t.coeff;
    }
    return v;
  };
  struct Row {
    std::vector<Fp> v;
    std::size_t pivot;
    std::vector<Fp> combo;
  };
  std::vector<Row> rows;
  MPoly<Fp> z = MPoly<Fp>::var(gb.ring, gb.ring->vars.name(var), Fp(1, p));
  MPoly<Fp> power = MPoly<Fp>::constant(gb.ring, Fp(1, p));
  for (std::size_t i = 0; i <= max_degree + 1; ++i) {
    if (i > 0) power = reduce(power * z, gb.gens);
    std::vector<Fp> w = to_vector(power);
    std::vector<Fp> combo(i + 1, Fp(0, p));
    combo[i] = Fp(1, p);
    for (const auto& r : rows) {
      if (r.pivot >= w.size() || w[r.pivot].is_zero()) continue;
      Fp f = w[r.pivot] / r.v[r.pivot];
      for (std::size_t c = 0; c < r.v.size(); ++c) {
        if (c >= w.size()) w.resize(c + 1, Fp(0, p));
        w[c] -= f * r.v[c];
      }
      for (std::size_t c = 0; c < r.combo.size(); ++c) combo[c] -= f * r.combo[c];
    }
    std::size_t pivot = 0;
    while (pivot < w.size() && w[pivot].is_zero()) ++pivot;
    if (pivot == w.size()) return combo;
    rows.push_back({std::move(w), pivot, std::move(combo)});
  }
  throw std::logic_error("minimal polynomial: quotient larger than its stated degree");
}

/// Nullspace basis of a dense matrix over Z/p.
std::vector<std::vector<Fp>> nullspace_mod(std::vector<std::vector<Fp>> a, std::size_t ncols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t i = r;
    while (i < a.size() && a[i][c].is_zero()) ++i;
    if (i == a.size()) continue;
    std::swap(a[i], a[r]);
    Fp inv = a[r][c].inverse();
    for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k == r || a[k][c].is_zero()) continue;
      Fp f = a[k][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!a[r][j].is_zero()) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Fp>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fp> x(ncols, Fp(0, p));
    x[f] = Fp(1, p);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -a[k][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// r/s with |r|, s <= sqrt(m/2) and r = a s mod m.
std::optional<BigRat> rational_reconstruction(const BigInt& a, const BigInt& m) {
  BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), BigInt(m / 2).get_mpz_t());
  BigInt r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  if (gcd(r1, s1) != 1) return std::nullopt;
  return BigRat(r1, s1);
}

class SampleSource {
public:
  explicit SampleSource(std::uint64_t seed) : rng_(seed) {}
  std::uint32_t t0(std::uint32_t p) { return std::uniform_int_distribution<std::uint32_t>(2, p - 1)(rng_); }

private:
  std::mt19937_64 rng_;
};

bool same_dimension(const DimensionResult& a, const DimensionResult& b) {
  if (a.index() != b.index()) return false;
  if (auto* za = std::get_if<ZeroDimensional>(&a)) return za->degree == std::get<ZeroDimensional>(b).degree;
  return std::get<PositiveDimensional>(a).independent.size() == std::get<PositiveDimensional>(b).independent.size();
}

}  // namespace

std::optional<Ideal<Fp>> modular_basis(const SaturatedSystem& sys, std::uint32_t p, std::uint32_t t0,
                                       const GbBudget& budget, GbStats* stats) {
  RingPtr ring = make_ring(sys.unknowns);
  std::vector<MPoly<Fp>> gens;
  for (const auto& g : sys.gens) {
    auto m = to_modular(g, ring, p, t0);
    if (!m) return std::nullopt;
    if (!m->is_zero()) gens.push_back(std::move(*m));
  }
  return buchberger(gens, ring, budget, stats);
}

GenericityResult genericity_check(const DuplicatedSystem& ds, const ModularOptions& opts) {
  SaturatedSystem sat = saturated_system(ds);
  SampleSource src(opts.seed);
  GenericityResult out;
  std::vector<DimensionResult> results;
  std::size_t prime_index = 0;
  while (results.size() < 2 || (results.size() == 2 && !same_dimension(results[0], results[1]))) {
    std::uint32_t p = nth_large_prime(prime_index++);
    std::uint32_t t0 = src.t0(p);
    GbStats stats;
    auto gb = modular_basis(sat, p, t0, opts.gb, &stats);
    if (!gb) continue;
    out.samples.push_back({p, t0});
    out.basis_size = std::max(out.basis_size, gb->gens.size());
    results.push_back(dimension_check(*gb, sat.unknowns));
    if (results.size() == 3) break;
  }
  // two agreeing samples, or the majority of three
  if (results.size() == 2 || same_dimension(results[0], results[1]) || same_dimension(results[0], results[2]))
    out.dimension = results[0];
  else
    out.dimension = results[1];
  return out;
}

EliminantInfo eliminant(const DuplicatedSystem& ds, const std::string& target, const ModularOptions& opts) {
  auto start = Clock::now();
  SaturatedSystem sat = saturated_system(ds);
  RingPtr fp_ring = make_ring(sat.unknowns);
  std::size_t zvar = fp_ring->vars.index(target);
  SampleSource src(opts.seed + 7919);

  struct Point {
    std::uint32_t t0;
    std::vector<Fp> mu;  // monic minimal polynomial, z^0..z^d
  };
  std::size_t d = 0;  // z-degree of the eliminant, fixed by the first good sample
  std::size_t ideal_degree = 0;
  unsigned T = 0;
  std::optional<std::size_t> pivot;
  BigInt modulus = 1;
  std::vector<BigInt> residues;
  std::optional<std::vector<BigRat>> previous;
  EliminantInfo info;

  auto check_time = [&] {
    if (seconds_since(start) > opts.max_seconds)
      throw BudgetExceeded("eliminant: time budget of " + std::to_string(opts.max_seconds) + " s exceeded", "seconds");
  };

  for (std::size_t pi = 0; pi < opts.max_primes; ++pi) {
    std::uint32_t p = nth_large_prime(pi);
    std::vector<Point> pts;
    std::set<std::uint32_t> used;
    auto add_point = [&]() -> bool {
      check_time();
      std::uint32_t t0 = src.t0(p);
      if (!used.insert(t0).second) return false;
      GbBudget budget = opts.gb;
      budget.max_seconds = std::min(budget.max_seconds, opts.max_seconds - seconds_since(start));
      std::optional<Ideal<Fp>> gb;
      try {
        gb = modular_basis(sat, p, t0, budget);
      } catch (const BudgetExceeded& e) {
        if (e.resource() == "seconds") check_time();
        throw;
      }
      if (!gb) return false;
      ++info.points_used;
      auto dim = dimension_check(*gb, sat.unknowns);
      auto* z = std::get_if<ZeroDimensional>(&dim);
      if (!z) return false;  // unlucky specialization
      if (z->degree == 0) throw std::logic_error("eliminant: the saturated ideal is the unit ideal");
      auto mu = minimal_polynomial_mod(*gb, zvar, p, z->degree);
      std::size_t deg = mu.size() - 1;
      if (d == 0 || deg > d) {
        if (d != 0) {
          // the earlier samples were unlucky
          pts.clear();
          modulus = 1;
          residues.clear();
          previous.reset();
          pivot.reset();
          T = 0;
        }
        d = deg;
        ideal_degree = z->degree;
      } else if (deg < d) {
        return false;
      }
      pts.push_back({t0, std::move(mu)});
      return true;
    };

    std::vector<Fp> solution;
    unsigned extra_tries = 0;
    while (true) {
      std::size_t unknowns = (d + 1) * (T + 1);
      std::size_t needed = d == 0 ? 1 : (unknowns + d - 1) / d + 2;
      while (pts.size() < needed) {
        std::size_t before = d;
        add_point();
        if (d != before) unknowns = (d + 1) * (T + 1), needed = (unknowns + d - 1) / d + 2;
      }
      // R(z, t0) proportional to mu: r_i(t0) - mu_i r_d(t0) = 0 for i < d
      std::vector<std::vector<Fp>> rows;
      for (const auto& pt : pts) {
        std::vector<Fp> tp{Fp(1, p)};
        for (unsigned j = 1; j <= T; ++j) tp.push_back(tp.back() * Fp(pt.t0, p));
        for (std::size_t i = 0; i < d; ++i) {
          std::vector<Fp> row(unknowns, Fp(0, p));
          for (unsigned j = 0; j <= T; ++j) {
            row[i * (T + 1) + j] = tp[j];
            row[d * (T + 1) + j] = -pt.mu[i] * tp[j];
          }
          rows.push_back(std::move(row));
        }
      }
      auto basis = nullspace_mod(std::move(rows), unknowns, p);
      if (basis.empty()) {
        if (++T > opts.max_t_degree)
          throw BudgetExceeded("eliminant: t-degree above " + std::to_string(opts.max_t_degree), "t-degree");
        extra_tries = 0;
        continue;
      }
      if (basis.size() > 1) {
        if (++extra_tries > unknowns) throw std::logic_error("eliminant: interpolation does not converge");
        add_point();
        continue;
      }
      // the rows of one point can be dependent, so confirm on fresh points
      std::size_t checked = pts.size();
      std::size_t target_pts = checked + 3;
      std::size_t d_before = d;
      while (pts.size() < target_pts && d == d_before) add_point();
      if (d != d_before) continue;
      bool holds = true;
      for (std::size_t k = checked; k < pts.size() && holds; ++k) {
        Fp t0(pts[k].t0, p);
        std::vector<Fp> r(d + 1, Fp(0, p));
        for (std::size_t i = 0; i <= d; ++i)
          for (unsigned j = T + 1; j-- > 0;) r[i] = r[i] * t0 + basis[0][i * (T + 1) + j];
        for (std::size_t i = 0; i < d; ++i)
          if (r[i] != pts[k].mu[i] * r[d]) holds = false;
      }
      if (!holds) {
        if (++extra_tries > unknowns) throw std::logic_error("eliminant: interpolation does not converge");
        continue;
      }
      solution = std::move(basis[0]);
      break;
    }

    std::size_t unknowns = (d + 1) * (T + 1);
    if (!pivot) {
      // first nonzero coefficient scanning z-degree then t-degree downwards
      for (std::size_t idx = unknowns; idx-- > 0;)
        if (!solution[idx].is_zero()) {
          pivot = idx;
          break;
        }
      residues.assign(unknowns, BigInt(0));
    }
    if (residues.size() != unknowns || solution[*pivot].is_zero()) continue;  // unlucky prime
    Fp inv = solution[*pivot].inverse();
    // CRT: x = r mod M, x = s mod p
    BigInt Mp = modulus * p;
    BigInt minv;
    BigInt pm = BigInt(p);
    mpz_invert(minv.get_mpz_t(), BigInt(modulus % pm).get_mpz_t(), pm.get_mpz_t());
    for (std::size_t idx = 0; idx < unknowns; ++idx) {
      BigInt s = BigInt((solution[idx] * inv).value());
      BigInt r = residues[idx];
      BigInt diff = (s - r % pm) % pm;
      if (diff < 0) diff += pm;
      BigInt k = (diff * minv) % pm;
      residues[idx] = r + modulus * k;
    }
    modulus = Mp;
    ++info.primes_used;

    std::vector<BigRat> rec;
    bool ok = true;
    for (const auto& r : residues) {
      auto q = rational_reconstruction(r, modulus);
      if (!q) {
        ok = false;
        break;
      }
      rec.push_back(*q);
    }
    if (!ok) continue;
    if (previous && *previous == rec) {
      RingPtr ring = zt_ring(target);
      std::vector<Term<BigRat>> terms;
      for (std::size_t i = 0; i <= d; ++i)
        for (unsigned j = 0; j <= T; ++j) {
          const BigRat& c = rec[i * (T + 1) + j];
          if (c.is_zero()) continue;
          Monomial m;
          m.set(0, static_cast<std::uint16_t>(i));
          m.set(1, static_cast<std::uint16_t>(j));
          terms.push_back({m, c});
        }
      info.poly = normalize_primitive(QMPoly::from_terms(ring, std::move(terms)));
      info.ideal_degree = ideal_degree;
      return info;
    }
    previous = std::move(rec);
  }
  throw BudgetExceeded("eliminant: coefficients did not stabilize within " + std::to_string(opts.max_primes) +
                           " primes",
                       "primes");
}

// ------------------------------------------------------ scalar routes

QMPoly classical_scalar_eliminant(const NumeratorSystem& ns, const std::string& target, const GbBudget& budget) {
  if (ns.n != 1 || ns.k != 1) throw std::invalid_argument("classical_scalar_eliminant: needs n = 1 and k = 1");
  RingPtr ring = make_ring({"x1", "u", target});
  std::size_t tv = ns.ring->vars.index("t");
  auto lift = [&](const QMPoly& q) {
    std::vector<Term<RatFuncT>> terms;
    for (const auto& t : q.terms()) {
      Term<RatFuncT> r{Monomial{}, RatFuncT(QPoly::monomial(t.coeff, t.mono[tv]))};
      for (std::size_t v = 0; v < q.nvars(); ++v)
        if (v != tv && t.mono[v]) r.mono.set(ring->vars.index(q.vars().name(v)), t.mono[v]);
      terms.push_back(std::move(r));
    }
    return MPoly<RatFuncT>::from_terms(ring, std::move(terms));
  };
  const QMPoly& E = ns.E[0];
  Ideal<RatFuncT> I{ring, {lift(E), lift(E.derivative("x1")), lift(E.derivative("u"))}};
  auto elim = eliminate(I, {target}, budget);
  if (elim.empty()) throw std::logic_error("classical_scalar_eliminant: elimination ideal is zero");
  const MPoly<RatFuncT>* best = &elim[0];
  for (const auto& g : elim)
    if (g.total_degree() < best->total_degree()) best = &g;
  QPoly den(BigRat(1));
  for (const auto& t : best->terms()) den = den * (t.coeff.den() / gcd(den, t.coeff.den()));
  RingPtr zt = zt_ring(target);
  std::size_t zi = best->vars().index(target);
  std::vector<Term<BigRat>> terms;
  for (const auto& t : best->terms()) {
    QPoly num = (t.coeff * RatFuncT(den)).num();
    for (std::size_t j = 0; j < num.size(); ++j) {
      if (num.coeff(j).is_zero()) continue;
      Monomial m;
      m.set(0, t.mono[zi]);
      m.set(1, static_cast<std::uint16_t>(j));
      terms.push_back({m, num.coeff(j)});
    }
  }
  QMPoly r = QMPoly::from_terms(zt, std::move(terms));
  QMPoly content = content_in(r, 0);
  if (!content.is_constant()) r = divide_or_throw(r, content, "classical_scalar_eliminant");
  return normalize_primitive(r);
}

QMPoly reduce_to_scalar(const NumeratorSystem& ns) {
  if (ns.n < 2) throw std::invalid_argument("reduce_to_scalar: needs at least two equations");
  std::vector<QMPoly> polys = ns.E;
  for (std::size_t v = ns.n; v >= 2; --v) {
    std::string x = ns.x_name(v - 1);
    std::size_t piv = polys.size();
    for (std::size_t i = polys.size(); i-- > 0;)
      if (polys[i].degree(x) > 0) {
        piv = i;
        break;
      }
    if (piv == polys.size()) throw std::invalid_argument("reduce_to_scalar: no equation involves " + x);
    std::vector<QMPoly> next;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (i != piv) next.push_back(resultant(polys[i], polys[piv], x));
    polys = std::move(next);
  }
  QMPoly R = polys[0];
  if (R.is_zero()) throw std::domain_error("reduce_to_scalar: the resultant vanishes identically");
  QMPoly det = build_det(ns);
  while (true) {
    QMPoly g = poly_gcd(R, det);
    if (g.is_constant()) break;
    R = divide_or_throw(R, g, "reduce_to_scalar");
  }
  return R;
}

std::pair<QMPoly, unsigned> strip_catalytic_power(const QMPoly& det, const NumeratorSystem& ns) {
  QMPoly lin = var_of(ns.ring, "u") - QMPoly::constant(ns.ring, ns.a);
  QMPoly d = det;
  unsigned e = 0;
  while (!d.is_zero()) {
    auto q = exact_divide(d, lin);
    if (!q) break;
    d = std::move(*q);
    ++e;
  }
  return {d, e};
}

PuiseuxReport analyze_det_roots(const DDESystem& sys, const NumeratorSystem& ns, const QMPoly& det, std::size_t order,
                                const PuiseuxOptions& opts) {
  auto F = solve_series(sys, order);
  auto bind = numerator_bindings(ns, F);
  QMPoly stripped = strip_catalytic_power(det, ns).first;
  TruncBiSeries ds = eval_at_series(stripped, bind, order);
  return puiseux_roots(u_coefficients(ds), opts);
}

// ------------------------------------------------------------ solve

namespace {

TruncTSeries target_series(const DDESystem& sys, const std::vector<TruncBiSeries>& F, const std::string& target) {
  if (target.size() < 2 || target[0] != 'z') throw std::invalid_argument("target must be a z-variable, got " + target);
  std::size_t j = std::stoul(target.substr(1));
  if (j >= sys.n() * sys.k) throw std::invalid_argument("target " + target + " out of range");
  return specialize(F[j / sys.k], sys.a, static_cast<unsigned>(j % sys.k));
}

}  // namespace

SolveReport solve(const DDESystem& input, const SolveOptions& opts) {
  SolveReport rep;
  DDESystem sys = bind_params(input, true);
  std::size_t N = opts.order ? opts.order : static_cast<std::size_t>(opts.max_guess_dz + 1) * (opts.max_guess_dt + 1) + opts.guard;
  rep.series_order = N;

  auto t0 = Clock::now();
  auto F = solve_series(sys, N);
  TruncTSeries s = target_series(sys, F, opts.target);
  rep.timings["series"] = seconds_since(t0);

  t0 = Clock::now();
  auto cand = guess_sweep(s, opts.max_guess_dz, opts.max_guess_dt, opts.guard, opts.target);
  rep.timings["guess"] = seconds_since(t0);
  if (!cand) rep.messages.push_back("no annihilating polynomial found within the guessing caps");

  auto attempt = [&](const DDESystem& S, NormalizeMode mode, bool deformed) -> bool {
    NumeratorSystem ns = normalize(S, mode);
    DuplicatedSystem ds = duplicate(build_kernel_system(ns));
    auto g0 = Clock::now();
    GenericityResult gen = genericity_check(ds, opts.modular);
    rep.timings[deformed ? "deformed_genericity" : "genericity"] = seconds_since(g0);
    (deformed ? rep.deformed_genericity : rep.genericity) = gen;
    if (!std::holds_alternative<ZeroDimensional>(gen.dimension)) return false;
    auto e0 = Clock::now();
    EliminantInfo info = eliminant(ds, opts.target, opts.modular);
    rep.timings["eliminant"] = seconds_since(e0);
    if (deformed) {
      // the deformed eliminant annihilates the deformed series instead
      const std::size_t check = 30;
      if (!verify_annihilation(info.poly, target_series(S, solve_series(S, check), opts.target), check))
        throw std::logic_error("solve: the deformed eliminant does not annihilate the deformed series");
    }
    rep.eliminant = info.poly;
    rep.sizes["ideal_degree"] = info.ideal_degree;
    rep.sizes["primes"] = info.primes_used;
    rep.sizes["points"] = info.points_used;
    return true;
  };

  try {
    bool generic = false;
    if (opts.deform != DeformMode::on) generic = attempt(sys, NormalizeMode::minimal, false);
    if (!generic) {
      if (opts.deform == DeformMode::off) {
        rep.status = SolveStatus::non_generic;
        rep.messages.push_back("the duplicated system is not zero-dimensional and deformation is off");
      } else {
        auto [dsys, params] = deform(sys, opts.epsilon);
        rep.deformation = params;
        rep.deformation_used = true;
        if (!attempt(dsys, NormalizeMode::deformation_ready, true)) {
          rep.status = SolveStatus::non_generic;
          rep.messages.push_back("the deformed system is not zero-dimensional either");
        } else {
          rep.messages.push_back("the eliminant belongs to the deformed system");
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    rep.status = SolveStatus::budget_exceeded;
    rep.messages.push_back(std::string("budget exceeded (") + e.resource() + "): " + e.what());
  }

  if (rep.eliminant && !rep.deformation_used) {
    if (!verify_annihilation(*rep.eliminant, s, N))
      throw std::logic_error("solve: the eliminant does not annihilate the series");
    if (cand && certify_divides(cand->poly, *rep.eliminant, opts.target)) {
      rep.minimal = cand->poly;
      rep.certificate = Certificate::both;
    } else {
      rep.minimal = cand ? std::optional<QMPoly>(cand->poly) : std::nullopt;
      rep.certificate = Certificate::series_verified;
      if (cand) rep.messages.push_back("the guessed polynomial does not divide the eliminant");
    }
  } else if (cand) {
    rep.minimal = cand->poly;
    rep.certificate = Certificate::series_verified;
  }
  return rep;
}

std::pair<BigInt, BigInt> degree_bound(unsigned n, unsigned k, unsigned delta) {
  if (n == 0 || k == 0 || delta == 0) throw std::invalid_argument("degree_bound: arguments must be positive");
  BigInt base = BigInt(2UL * n * k * delta);
  unsigned long e = 2UL * n * n * n * k * k + 2UL * n;
  BigInt num;
  mpz_pow_ui(num.get_mpz_t(), base.get_mpz_t(), e);
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n) * k);
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), fact.get_mpz_t(), static_cast<unsigned long>(n) * k);
  return {num, den};
}

std::string to_string(const DimensionResult& d) {
  if (auto* z = std::get_if<ZeroDimensional>(&d)) return "ZeroDimensional(degree " + std::to_string(z->degree) + ")";
  std::string s = "PositiveDimensional(independent:";
  for (const auto& v : std::get<PositiveDimensional>(d).independent) s += " " + v;
  return s + ")";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::none: return "none";
    case Certificate::series_verified: return "SeriesVerified";
    case Certificate::divides_eliminant: return "DividesEliminant";
    case Certificate::both: return "Both";
  }
  return "none";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::certified: return "certified";
    case SolveStatus::budget_exceeded: return "budget_exceeded";
    case SolveStatus::non_generic: return "non_generic";
  }
  return "certified";
}

}  // namespace catsolve
