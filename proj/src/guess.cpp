#include "catsolve/guess.hpp"

#include "catsolve/polyops.hpp"

#include <stdexcept>

namespace catsolve {

RingPtr zt_ring(const std::string& z) { return make_ring({z, "t"}); }

QMPoly normalize_primitive(const QMPoly& p) {
  if (p.is_zero()) return p;
  BigInt l = 1;
  for (const auto& t : p.terms()) l = lcm(l, t.coeff.den());
  BigInt g = 0;
  for (const auto& t : p.terms()) g = gcd(g, (t.coeff * BigRat(l)).num());
  BigRat scale = BigRat(l, g);
  if (p.lc().sign() < 0) scale = -scale;
  return p.scaled(scale);
}

namespace {

/// Rational basis of the nullspace of an integer matrix, by fraction-free
/// elimination followed by back substitution.
std::vector<std::vector<BigRat>> nullspace(std::vector<std::vector<BigInt>> a, std::size_t ncols) {
  std::size_t m = a.size();
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m; ++c) {
    std::size_t i = r;
    while (i < m && a[i][c] == 0) ++i;
    if (i == m) continue;
    std::swap(a[i], a[r]);
    for (std::size_t k = r + 1; k < m; ++k) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        BigInt v = a[r][c] * a[k][j] - a[k][c] * a[r][j];
        if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t())) throw std::logic_error("nullspace: inexact elimination");
        mpz_divexact(a[k][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[k][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<BigRat>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<BigRat> x(ncols);
    x[f] = BigRat(1);
    for (std::size_t k = pivots.size(); k-- > 0;) {
      std::size_t pc = pivots[k];
      BigRat acc;
      for (std::size_t j = pc + 1; j < ncols; ++j)
        if (!x[j].is_zero() && a[k][j] != 0) acc += BigRat(a[k][j]) * x[j];
      x[pc] = -acc / BigRat(a[k][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace

std::optional<GuessCandidate> guess_minpoly(const TruncTSeries& s, unsigned dz, unsigned dt, unsigned guard,
                                            const std::string& z) {
  if (s.ramification() != 1) throw std::invalid_argument("guess_minpoly: ramified series");
  std::size_t N = s.order();
  std::size_t unknowns = static_cast<std::size_t>(dz + 1) * (dt + 1);
  if (N < unknowns + guard)
    throw std::invalid_argument("guess_minpoly: truncation order " + std::to_string(N) + " too small for bidegree (" +
                                std::to_string(dz) + ", " + std::to_string(dt) + ")");
  std::vector<TruncTSeries> pw;
  TruncTSeries one(N);
  one.coeff(0) = BigRat(1);
  pw.push_back(one);
  for (unsigned i = 1; i <= dz; ++i) pw.push_back(pw.back() * s);

  // row k: coefficient of t^k in sum c_ij s^i t^j; column i*(dt+1) + j
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<BigRat> row(unknowns);
    for (unsigned i = 0; i <= dz; ++i)
      for (unsigned j = 0; j <= dt && j <= k; ++j) row[i * (dt + 1) + j] = pw[i].coeff(k - j);
    BigInt l = 1;
    for (const auto& x : row) l = lcm(l, x.den());
    std::vector<BigInt> irow;
    for (const auto& x : row) irow.push_back((x * BigRat(l)).num());
    rows.push_back(std::move(irow));
  }
  auto basis = nullspace(std::move(rows), unknowns);
  if (basis.empty()) return std::nullopt;

  RingPtr ring = zt_ring(z);
  auto to_poly = [&](const std::vector<BigRat>& v) {
    std::vector<Term<BigRat>> terms;
    for (unsigned i = 0; i <= dz; ++i)
      for (unsigned j = 0; j <= dt; ++j) {
        const BigRat& c = v[i * (dt + 1) + j];
        if (c.is_zero()) continue;
        Monomial m;
        m.set(0, static_cast<std::uint16_t>(i));
        m.set(1, static_cast<std::uint16_t>(j));
        terms.push_back({m, c});
      }
    return QMPoly::from_terms(ring, std::move(terms));
  };
  QMPoly g = to_poly(basis[0]);
  for (std::size_t b = 1; b < basis.size(); ++b) g = poly_gcd(g, to_poly(basis[b]));
  if (!g.involves(0)) return std::nullopt;
  QMPoly content = content_in(g, 0);
  if (!content.is_constant()) g = divide_or_throw(g, content, "guess_minpoly");
  g = normalize_primitive(g);
  if (!verify_annihilation(g, s, N)) return std::nullopt;
  return GuessCandidate{g, static_cast<unsigned>(g.degree(0)), static_cast<unsigned>(std::max(g.degree(1), 0)), N};
}

std::optional<GuessCandidate> guess_sweep(const TruncTSeries& s, unsigned max_dz, unsigned max_dt, unsigned guard,
                                          const std::string& z) {
  for (unsigned total = 1; total <= max_dz + max_dt; ++total)
    for (unsigned dz = 1; dz <= std::min(total, max_dz); ++dz) {
      unsigned dt = total - dz;
      if (dt > max_dt) continue;
      if (s.order() < static_cast<std::size_t>(dz + 1) * (dt + 1) + guard) continue;
      if (auto c = guess_minpoly(s, dz, dt, guard, z)) return c;
    }
  return std::nullopt;
}

bool verify_annihilation(const QMPoly& p, const TruncTSeries& s, std::size_t order) {
  if (p.is_zero()) throw std::invalid_argument("verify_annihilation: zero polynomial");
  if (order > s.order()) throw std::invalid_argument("verify_annihilation: order exceeds the truncation");
  std::map<std::string, TruncTSeries> bind;
  for (const auto& name : p.vars().names())
    if (name != "t") bind[name] = s.truncated(order);
  if (bind.size() != 1) throw std::invalid_argument("verify_annihilation: expected a polynomial in (z, t)");
  return eval_at_series(p, bind, order).is_zero();
}

bool certify_divides(const QMPoly& candidate, const QMPoly& eliminant, const std::string& z) {
  if (candidate.is_zero() || eliminant.is_zero()) throw std::invalid_argument("certify_divides: zero input");
  QMPoly c = candidate.to_ring(eliminant.ring());
  if (c.degree(z) < 1) throw std::invalid_argument("certify_divides: candidate has degree 0 in " + z);
  auto pd = pseudo_divide(eliminant, c, z);
  if (!pd.remainder.is_zero()) return false;
  return exact_divide(eliminant, c).has_value();
}

}  // namespace catsolve
