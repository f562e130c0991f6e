#pragma once

// Structural operations on MPoly: determinants, resultants, pseudo-division,
// exact division, GCD and squarefree parts.

#include "catsolve/mpoly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace catsolve {

template <class F>
using PolyMatrix = std::vector<std::vector<MPoly<F>>>;

/// p(images[0], images[1], ...) with every image in the target ring.
template <class F>
MPoly<F> compose(const MPoly<F>& p, const RingPtr& target, const std::vector<MPoly<F>>& images) {
  if (images.size() != p.nvars()) throw std::invalid_argument("compose: one image per variable required");
  std::vector<std::vector<MPoly<F>>> powers(p.nvars());
  auto power = [&](std::size_t v, unsigned e) -> const MPoly<F>& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(MPoly<F>::constant(target, p.one_like()));
    while (pw.size() <= e) pw.push_back(pw.back() * images[v]);
    return pw[e];
  };
  std::vector<Term<F>> acc;
  for (const auto& t : p.terms()) {
    MPoly<F> prod = MPoly<F>::constant(target, t.coeff);
    for (std::size_t v = 0; v < p.nvars() && !prod.is_zero(); ++v)
      if (t.mono[v]) prod *= power(v, t.mono[v]);
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return MPoly<F>::from_terms(target, std::move(acc));
}

/// Exact quotient p / q, or nullopt when q does not divide p.
template <class F>
std::optional<MPoly<F>> exact_divide(const MPoly<F>& p, const MPoly<F>& q) {
  if (q.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  MPoly<F> rem = p;
  std::vector<Term<F>> quo;
  F inv = q.lc().inverse();
  while (!rem.is_zero()) {
    if (!q.lm().divides(rem.lm())) return std::nullopt;
    Monomial m = quotient(rem.lm(), q.lm());
    F c = rem.lc() * inv;
    quo.push_back({m, c});
    rem -= q.mul_term(m, c);
  }
  return MPoly<F>::from_terms(p.ring(), std::move(quo));
}

template <class F>
MPoly<F> divide_or_throw(const MPoly<F>& p, const MPoly<F>& q, const char* what) {
  auto r = exact_divide(p, q);
  if (!r) throw std::logic_error(std::string(what) + ": inexact division");
  return *r;
}

namespace detail {

template <class F>
MPoly<F> det_cofactor(const PolyMatrix<F>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  MPoly<F> acc(m[0][0].ring());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix<F> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MPoly<F>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    MPoly<F> term = m[0][c] * det_cofactor(minor);
    if (c % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

}  // namespace detail

/// Determinant of a square polynomial matrix. Cofactor expansion for n <= 3,
/// fraction-free (Bareiss) elimination above.
template <class F>
MPoly<F> pdet(PolyMatrix<F> m, const RingPtr& ring) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("pdet: matrix is not square");
  if (n == 0) return MPoly<F>::constant(ring, F(1));
  for (auto& row : m)
    for (auto& e : row)
      if (!e.ring()) e = MPoly<F>(ring);
  if (n <= 3) return detail::det_cofactor(m);

  bool negate = false;
  MPoly<F> prev = MPoly<F>::constant(ring, F(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return MPoly<F>(ring);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly<F> num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divide_or_throw(num, prev, "pdet");
      }
      m[i][k] = MPoly<F>(ring);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Sylvester matrix of p and q with respect to var, rows of p first.
template <class F>
PolyMatrix<F> sylvester_matrix(const MPoly<F>& p, const MPoly<F>& q, std::size_t var) {
  auto pc = p.coeffs_in(var);
  auto qc = q.coeffs_in(var);
  std::size_t m = pc.size() - 1, n = qc.size() - 1;
  std::size_t size = m + n;
  PolyMatrix<F> s(size, std::vector<MPoly<F>>(size, MPoly<F>(p.ring())));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = pc[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = qc[n - i];
  return s;
}

/// Resultant with respect to var: det of the Sylvester matrix, p-rows first.
template <class F>
MPoly<F> resultant(const MPoly<F>& p, const MPoly<F>& q, const std::string& var_name) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant: zero input");
  std::size_t var = p.vars().index(var_name);
  int dp = p.degree(var), dq = q.degree(var);
  if (dp == 0 && dq == 0) return MPoly<F>::constant(p.ring(), p.one_like());
  if (dp == 0) return p.pow(static_cast<unsigned>(dq));
  if (dq == 0) return q.pow(static_cast<unsigned>(dp));
  return pdet(sylvester_matrix(p, q, var), p.ring());
}

template <class F>
struct PseudoDivision {
  MPoly<F> quotient;
  MPoly<F> remainder;
  MPoly<F> multiplier;
};

/// multiplier * p = quotient * q + remainder, deg_var(remainder) < deg_var(q),
/// multiplier = lc_var(q)^(max(deg p - deg q + 1, 0)).
template <class F>
PseudoDivision<F> pseudo_divide(const MPoly<F>& p, const MPoly<F>& q, const std::string& var_name) {
  std::size_t var = q.vars().index(var_name);
  if (q.is_zero()) throw std::invalid_argument("pseudo_divide: divisor is zero");
  int dq = q.degree(var);
  MPoly<F> lcq = q.lead_coeff_in(var);
  const RingPtr& ring = q.ring();
  MPoly<F> one = MPoly<F>::constant(ring, q.one_like());
  int dp = p.is_zero() ? -1 : p.degree(var);
  int e = std::max(dp - dq + 1, 0);
  MPoly<F> quo(ring), rem = p;
  int used = 0;
  while (!rem.is_zero() && rem.degree(var) >= dq) {
    int dr = rem.degree(var);
    Monomial shift;
    shift.set(var, static_cast<std::uint16_t>(dr - dq));
    MPoly<F> lead = rem.lead_coeff_in(var).mul_term(shift, q.one_like());
    quo = lcq * quo + lead;
    rem = lcq * rem - lead * q;
    ++used;
  }
  MPoly<F> pad = lcq.pow(static_cast<unsigned>(e - used));
  return {quo * pad, rem * pad, lcq.pow(static_cast<unsigned>(e))};
}

/// Content of p with respect to var: GCD of its coefficients.
template <class F>
MPoly<F> content_in(const MPoly<F>& p, std::size_t var);

/// Monic GCD over the coefficient field (subresultant PRS, recursive on
/// the variables).
template <class F>
MPoly<F> poly_gcd(const MPoly<F>& a, const MPoly<F>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const RingPtr& ring = a.ring();
  std::size_t var = a.nvars();
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (a.involves(v) || b.involves(v)) {
      var = v;
      break;
    }
  if (var == a.nvars()) return MPoly<F>::constant(ring, a.one_like());
  if (!a.involves(var)) return poly_gcd(a, content_in(b, var));
  if (!b.involves(var)) return poly_gcd(content_in(a, var), b);

  MPoly<F> ca = content_in(a, var), cb = content_in(b, var);
  MPoly<F> cg = poly_gcd(ca, cb);
  MPoly<F> r0 = divide_or_throw(a, ca, "poly_gcd");
  MPoly<F> r1 = divide_or_throw(b, cb, "poly_gcd");
  if (r0.degree(var) < r1.degree(var)) std::swap(r0, r1);

  const std::string& name = a.vars().name(var);
  MPoly<F> g = MPoly<F>::constant(ring, a.one_like());
  MPoly<F> h = g;
  while (true) {
    int delta = r0.degree(var) - r1.degree(var);
    MPoly<F> r = pseudo_divide(r0, r1, name).remainder;
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      r1 = MPoly<F>::constant(ring, a.one_like());
      break;
    }
    MPoly<F> denom = g * h.pow(static_cast<unsigned>(delta));
    r0 = r1;
    r1 = divide_or_throw(r, denom, "subresultant");
    g = r0.lead_coeff_in(var);
    if (delta == 0) {
      // h unchanged
    } else {
      MPoly<F> gd = g.pow(static_cast<unsigned>(delta));
      h = divide_or_throw(gd, h.pow(static_cast<unsigned>(delta - 1)), "subresultant");
    }
  }
  MPoly<F> prim = divide_or_throw(r1, content_in(r1, var), "poly_gcd");
  return (prim * cg).monic();
}

template <class F>
MPoly<F> content_in(const MPoly<F>& p, std::size_t var) {
  auto cs = p.coeffs_in(var);
  MPoly<F> g(p.ring());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// p / gcd(p, d/dvar p), normalized monic.
template <class F>
MPoly<F> squarefree_part(const MPoly<F>& p, const std::string& var_name) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero input");
  std::size_t var = p.vars().index(var_name);
  if (!p.involves(var)) return MPoly<F>::constant(p.ring(), p.one_like());
  MPoly<F> g = poly_gcd(p, p.derivative(var));
  return divide_or_throw(p, g, "squarefree_part").monic();
}

}  // namespace catsolve
