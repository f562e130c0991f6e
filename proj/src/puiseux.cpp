#include "catsolve/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace catsolve {

// ---------------------------------------------------------------- PSer

PSer PSer::from_series(const TruncTSeries& s) {
  PSer r(s.ramification(), static_cast<long>(s.coeffs().size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = AlgNum(s.coeff(i));
  return r;
}

long PSer::valuation() const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return static_cast<long>(i);
  return prec;
}

PSer PSer::refined(unsigned factor) const {
  if (factor == 1) return *this;
  PSer r(D * factor, prec * static_cast<long>(factor));
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i * factor] = c[i];
  return r;
}

PSer PSer::shifted(long units) const {
  if (units == 0) return *this;
  PSer r(D, prec + units);
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i + static_cast<std::size_t>(units)] = c[i];
  return r;
}

PSer PSer::unshifted(long units) const {
  if (units == 0) return *this;
  PSer r(D, prec - units);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (static_cast<long>(i) < units) {
      if (!c[i].is_zero()) throw std::logic_error("PSer: division by a power of t is not exact");
    } else {
      r.c[i - static_cast<std::size_t>(units)] = c[i];
    }
  }
  return r;
}

PSer PSer::scaled(const AlgNum& x) const {
  PSer r = *this;
  for (auto& v : r.c)
    if (!v.is_zero()) v *= x;
  return r;
}

PSer PSer::capped(long max_prec) const {
  if (prec <= max_prec) return *this;
  PSer r = *this;
  r.prec = max_prec;
  r.c.resize(static_cast<std::size_t>(std::max(max_prec, 0L)));
  return r;
}

PSer& PSer::operator+=(const PSer& o) {
  if (D != o.D) throw std::invalid_argument("PSer: ramification mismatch");
  prec = std::min(prec, o.prec);
  c.resize(static_cast<std::size_t>(std::max(prec, 0L)));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

PSer operator*(const PSer& a, const PSer& b) {
  if (a.D != b.D) throw std::invalid_argument("PSer: ramification mismatch");
  long va = a.valuation(), vb = b.valuation();
  PSer r(a.D, std::min(a.prec + vb, b.prec + va));
  long n = std::max(r.prec, 0L);
  for (long i = va; i < static_cast<long>(a.c.size()) && i < n; ++i) {
    if (a.c[static_cast<std::size_t>(i)].is_zero()) continue;
    for (long j = vb; j < static_cast<long>(b.c.size()) && i + j < n; ++j) {
      const AlgNum& y = b.c[static_cast<std::size_t>(j)];
      if (!y.is_zero()) r.c[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * y;
    }
  }
  return r;
}

bool PSer::zero_below(long units) const { return prec >= units && valuation() >= units; }

namespace {

std::string t_power(long i, unsigned D) {
  if (i == 0) return "";
  BigRat e{BigInt(i), BigInt(D)};
  if (e.is_one()) return "t";
  if (e.is_integer()) return "t^" + e.to_string();
  return "t^(" + e.to_string() + ")";
}

}  // namespace

std::string PSer::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    std::string cs = c[i].to_string();
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    std::string tp = t_power(static_cast<long>(i), D);
    std::string term = tp.empty() ? cs : (cs == "1" ? tp : cs + "*" + tp);
    if (s.empty()) s = neg ? "-" + term : term;
    else s += (neg ? " - " : " + ") + term;
  }
  if (s.empty()) s = "0";
  std::string order = prec > 0 ? t_power(prec, D) : "1";
  return s + " + O(" + order + ")";
}

std::string PuiseuxBranch::to_string() const {
  std::string s = expansion.to_string();
  if (field) s += "  where theta is a root of " + field->to_string("theta");
  return s;
}

// ------------------------------------------------------ rational roots

namespace {

/// Divisors of |n| > 0 by trial division; nullopt if a composite cofactor
/// remains.
std::optional<std::vector<BigInt>> divisors(BigInt n) {
  n = abs(n);
  std::vector<std::pair<BigInt, unsigned>> factors;
  for (unsigned long p = 2; p < 100000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e) factors.push_back({BigInt(p), e});
  }
  if (n > 1) {
    if (BigInt(100000) * 100000 > n || mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) factors.push_back({n, 1});
    else return std::nullopt;
  }
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& [p, e] : factors) {
    std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<BigRat>> rational_roots(const QPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::set<BigRat> found;
  std::size_t low = 0;
  while (p.coeff(low).is_zero()) ++low;
  if (low > 0) found.insert(BigRat(0));
  BigInt l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, c.den());
  std::vector<BigInt> a;
  for (std::size_t i = low; i < p.size(); ++i) a.push_back((p.coeff(i) * BigRat(l)).num());
  if (a.size() > 1) {
    auto dn = divisors(a.front());
    auto dl = divisors(a.back());
    if (!dn || !dl) return std::nullopt;
    if (dn->size() * dl->size() > 200000) return std::nullopt;
    QPoly q(std::vector<BigRat>(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end()));
    for (const auto& num : *dn)
      for (const auto& den : *dl) {
        if (gcd(num, den) != 1) continue;
        for (int sign : {1, -1}) {
          BigRat r(BigInt(num * sign), den);
          if (q.eval(r).is_zero()) found.insert(r);
        }
      }
  }
  return std::vector<BigRat>(found.begin(), found.end());
}

// ----------------------------------------------------------- analysis

namespace {

using APoly = UPoly<AlgNum>;

struct State {
  std::vector<PSer> poly;
  unsigned D = 1;
  AlgNum::Modulus field;
  std::vector<std::pair<long, AlgNum>> prefix;  // exponent in units of 1/D
  long mu = 0;                                  // U = prefix + t^{mu/D} v
  unsigned depth = 0;
  unsigned mult = 1;
  std::size_t entry = 0;
};

struct Candidate {
  AlgNum c;
  AlgNum::Modulus field;
  unsigned conj = 1;
  QPoly minpoly;
};

QPoly to_qpoly(const APoly& f) {
  std::vector<BigRat> c;
  for (const auto& x : f.coeffs()) c.push_back(x.rational());
  return QPoly(std::move(c));
}

QPoly linear(const BigRat& r) { return QPoly(std::vector<BigRat>{-r, BigRat(1)}); }

class Engine {
public:
  Engine(const PuiseuxOptions& opts, std::size_t order) : opts_(opts), order_(order) {}

  void run(State s) { resolve(std::move(s), true); }
  PuiseuxReport report;

private:
  void fail(const std::string& note) {
    report.status = PuiseuxStatus::inconclusive;
    if (std::find(report.notes.begin(), report.notes.end(), note) == report.notes.end()) report.notes.push_back(note);
  }

  long cap(unsigned D) const { return static_cast<long>((2 * order_ + opts_.expand_to + 2) * D); }

  /// P(t^lambda (c + w)) / t^e for the edge of slope snum/den (in units
  /// of 1/D) through the point (i, vi); e is where its line meets h = 0.
  State substitute(const State& s, long snum, long den, long vi, std::size_t i, const Candidate& root) const {
    long g = std::gcd(snum, den);
    unsigned factor = static_cast<unsigned>(snum == 0 ? 1 : den / g);
    long lam = snum == 0 ? 0 : snum / g;
    State r;
    r.D = s.D * factor;
    r.field = root.field ? root.field : s.field;
    for (const auto& [e, c] : s.prefix) r.prefix.push_back({e * factor, c});
    r.mu = s.mu * factor + lam;
    r.prefix.push_back({r.mu, root.c});
    r.depth = s.depth;
    r.mult = s.mult;
    r.entry = s.entry;
    long e = vi * static_cast<long>(factor) + static_cast<long>(i) * lam;
    long limit = cap(r.D);
    std::vector<PSer> b;
    b.reserve(s.poly.size());
    for (std::size_t h = 0; h < s.poly.size(); ++h)
      b.push_back(s.poly[h].refined(factor).shifted(static_cast<long>(h) * lam).capped(limit));
    std::size_t n = b.size();
    if (!root.c.is_zero())
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) b[j] += b[j + 1].scaled(root.c);
    for (auto& x : b) x = x.unshifted(e);
    r.poly = std::move(b);
    return r;
  }

  void resolve(State s, bool top) {
    const auto& P = s.poly;
    std::size_t n = P.size();
    std::vector<long> val(n);
    std::vector<bool> known(n);
    for (std::size_t h = 0; h < n; ++h) {
      val[h] = P[h].valuation();
      known[h] = val[h] < P[h].prec;
    }
    std::optional<std::size_t> J;
    for (std::size_t h = 0; h < n; ++h)
      if (known[h] && val[h] == 0) {
        J = h;
        if (!top) break;
      }
    if (!J) {
      fail(top ? "no coefficient with a nonzero constant term" : "truncation order too small to separate roots");
      return;
    }
    if (top)
      for (std::size_t h = 0; h < n; ++h)
        if (!known[h] && P[h].prec <= 0) {
          fail("truncation order too small to bound the Newton polygon");
          return;
        }
    if (!known[0]) {
      fail(top ? "the coefficient of u^0 vanishes to the truncation order" : "truncation order too small to separate roots");
      return;
    }
    // lower convex hull of the known points with index <= J
    std::vector<std::size_t> hull;
    for (std::size_t h = 0; h <= *J; ++h) {
      if (!known[h]) continue;
      while (hull.size() >= 2) {
        std::size_t o = hull[hull.size() - 2], a = hull.back();
        long cross = static_cast<long>(a - o) * (val[h] - val[o]) - (val[a] - val[o]) * static_cast<long>(h - o);
        if (cross > 0) break;
        hull.pop_back();
      }
      hull.push_back(h);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
      std::size_t i = hull[k], j = hull[k + 1];
      long snum = val[i] - val[j];
      long den = static_cast<long>(j - i);
      auto line_times_den = [&](std::size_t h) { return val[i] * den - static_cast<long>(h - i) * snum; };
      bool certified = true;
      for (std::size_t h = 0; h <= *J; ++h)
        if (!known[h] && P[h].prec * den <= line_times_den(h)) certified = false;
      if (!certified) {
        fail("truncation order too small to certify a Newton polygon edge");
        continue;
      }
      std::vector<AlgNum> phi(static_cast<std::size_t>(den + 1));
      for (std::size_t h = i; h <= j; ++h)
        if (known[h] && val[h] * den == line_times_den(h)) phi[h - i] = P[h].c[static_cast<std::size_t>(val[h])];
      handle_edge(s, top, snum, den, val[i], i, APoly(std::move(phi)));
    }
  }

  void handle_edge(const State& s, bool top, long snum, long den, long vi, std::size_t i, const APoly& phi) {
    BigRat lambda(BigInt(snum), BigInt(den * static_cast<long>(s.D)));
    auto sqf = squarefree_decomposition(phi);
    for (std::size_t m = 1; m <= sqf.size(); ++m) {
      const APoly& f = sqf[m - 1];
      if (f.degree() <= 0) continue;
      std::vector<Candidate> roots;
      std::vector<std::pair<unsigned, QPoly>> unsplit;  // (root count, minimal polynomial)
      if (!s.field) {
        QPoly fq = to_qpoly(f);
        auto rr = rational_roots(fq);
        QPoly rest = fq.monic();
        if (rr)
          for (const auto& r : *rr) {
            roots.push_back({AlgNum(r), nullptr, 1, linear(r)});
            rest = rest / linear(r);
          }
        if (rest.degree() >= 1) {
          bool want = m > 1 || opts_.expand_to > 0;
          if (rr && rest.degree() <= 3 && want) {
            auto mod = AlgNum::make_modulus(rest);
            roots.push_back({AlgNum::generator(mod), mod, static_cast<unsigned>(rest.degree()), rest.monic()});
          } else {
            unsplit.push_back({static_cast<unsigned>(rest.degree()), rest.monic()});
          }
        }
      } else if (f.degree() == 1) {
        roots.push_back({-f.coeff(0) / f.coeff(1), s.field, 1, QPoly()});
      } else {
        unsplit.push_back({static_cast<unsigned>(f.degree()), QPoly()});
      }

      auto entry_for = [&](const QPoly& minpoly) {
        if (!top) return s.entry;
        report.roots.push_back({lambda, minpoly, 0});
        return report.roots.size() - 1;
      };
      for (auto& root : roots) {
        std::size_t entry = entry_for(root.minpoly);
        State base = s;
        base.entry = entry;
        base.mult = s.mult * root.conj;
        State next = substitute(base, snum, den, vi, i, root);
        if (m == 1) {
          report.roots[entry].count += base.mult;
          if (opts_.expand_to > 0) expand(std::move(next));
        } else if (s.depth + 1 > opts_.max_depth) {
          fail("maximum recursion depth reached before roots separated");
        } else {
          next.depth = s.depth + 1;
          resolve(std::move(next), false);
        }
      }
      for (const auto& [count, minpoly] : unsplit) {
        std::size_t entry = entry_for(minpoly);
        if (m == 1) {
          report.roots[entry].count += s.mult * count;
        } else {
          fail(s.field ? "repeated leading coefficients need a second field extension"
                       : "repeated leading coefficients with an irreducible factor of degree above 3");
        }
      }
    }
  }

  void expand(State s) {
    std::size_t target = opts_.expand_to;
    long known;
    while (true) {
      const PSer& a0 = s.poly[0];
      const PSer& a1 = s.poly.size() > 1 ? s.poly[1] : PSer();
      if (!a0.known_nonzero()) {
        known = s.mu + std::max(a0.prec, 0L);
        break;
      }
      long v0 = a0.valuation();
      if (s.mu + v0 >= static_cast<long>(target * s.D) || a1.prec <= 0 || a1.c[0].is_zero()) {
        known = s.mu + v0;
        break;
      }
      Candidate next{-a0.c[static_cast<std::size_t>(v0)] / a1.c[0], nullptr, 1, QPoly()};
      s = substitute(s, v0, 1, v0, 0, next);
    }
    PuiseuxBranch b;
    const PuiseuxRoot& entry = report.roots[s.entry];
    b.valuation = entry.valuation;
    b.leading_minpoly = entry.leading_minpoly;
    b.field = s.field;
    b.conjugates = s.mult;
    b.expansion = PSer(s.D, known);
    for (const auto& [e, c] : s.prefix)
      if (e < known) b.expansion.c[static_cast<std::size_t>(e)] += c;
    b.known_to = BigRat(BigInt(known), BigInt(s.D));
    report.branches.push_back(std::move(b));
  }

  PuiseuxOptions opts_;
  std::size_t order_;
};

}  // namespace

std::vector<TruncTSeries> u_coefficients(const TruncBiSeries& s) {
  int deg = -1;
  for (const auto& c : s.coeffs()) deg = std::max(deg, c.degree());
  std::vector<TruncTSeries> out;
  for (int i = 0; i <= deg; ++i) {
    TruncTSeries c(s.order());
    for (std::size_t j = 0; j < s.order(); ++j) c.coeff(j) = s.coeff(j).coeff(static_cast<std::size_t>(i));
    out.push_back(std::move(c));
  }
  return out;
}

PuiseuxReport puiseux_roots(const std::vector<TruncTSeries>& p, const PuiseuxOptions& opts) {
  if (p.empty()) throw std::invalid_argument("puiseux_roots: zero polynomial");
  std::size_t N = p[0].order();
  for (const auto& c : p)
    if (c.order() != N || c.ramification() != 1)
      throw std::invalid_argument("puiseux_roots: coefficients must share one unramified truncation");
  State s;
  long vmin = static_cast<long>(N);
  for (const auto& c : p) {
    s.poly.push_back(PSer::from_series(c));
    vmin = std::min(vmin, s.poly.back().valuation());
  }
  if (vmin >= static_cast<long>(N)) throw std::invalid_argument("puiseux_roots: polynomial vanishes modulo the truncation");
  for (auto& c : s.poly) c = c.unshifted(vmin);
  Engine engine(opts, N);
  engine.run(std::move(s));
  PuiseuxReport r = std::move(engine.report);
  r.certified_to = N;
  for (const auto& root : r.roots) r.total_distinct += root.count;
  return r;
}

PSer eval_at_branch(const TruncBiSeries& s, const PuiseuxBranch& b) {
  const PSer& U = b.expansion;
  unsigned D = U.D;
  long full = static_cast<long>(s.order()) * D;
  PSer one(D, full);
  if (full > 0) one.c[0] = AlgNum(1);
  int deg = -1;
  for (const auto& c : s.coeffs()) deg = std::max(deg, c.degree());
  std::vector<PSer> pw{one};
  for (int i = 1; i <= deg; ++i) pw.push_back((pw.back() * U).capped(full));
  PSer acc(D, full);
  for (std::size_t j = 0; j < s.order(); ++j) {
    const QPoly& g = s.coeff(j);
    if (g.is_zero()) continue;
    PSer inner(D, full);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!g.coeff(i).is_zero()) inner += pw[i].scaled(AlgNum(g.coeff(i)));
    acc += inner.shifted(static_cast<long>(j) * D).capped(full);
  }
  return acc;
}

}  // namespace catsolve
