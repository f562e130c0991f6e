#pragma once

// Newton-polygon analysis of polynomials in u whose coefficients are
// truncated power series in t. Roots are Puiseux series in t with
// non-negative valuation; repeated leading terms are separated by
// recursion, with at most one algebraic extension Q(theta) per branch.

#include "catsolve/algnum.hpp"
#include "catsolve/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace catsolve {

/// Series in t^{1/D} over Q or Q(theta), known modulo t^{prec/D}. The
/// coefficient of t^{i/D} is c[i]; c has max(prec, 0) entries.
struct PSer {
  unsigned D = 1;
  long prec = 0;
  std::vector<AlgNum> c;

  PSer() = default;
  PSer(unsigned d, long precision) : D(d), prec(precision), c(static_cast<std::size_t>(std::max(precision, 0L))) {}
  static PSer from_series(const TruncTSeries& s);

  /// Index of the first nonzero known coefficient, or prec.
  long valuation() const;
  bool known_nonzero() const { return valuation() < prec; }
  /// Same series over a finer ramification D * factor.
  PSer refined(unsigned factor) const;
  PSer shifted(long units) const;
  /// Division by t^{units/D}; the dropped coefficients must be zero.
  PSer unshifted(long units) const;
  PSer scaled(const AlgNum& x) const;
  PSer capped(long max_prec) const;
  PSer& operator+=(const PSer& o);
  friend PSer operator+(PSer a, const PSer& b) { return a += b; }
  friend PSer operator*(const PSer& a, const PSer& b);
  /// True when every known coefficient below t^{units/D} vanishes and
  /// the series is known that far.
  bool zero_below(long units) const;
  std::string to_string() const;
};

enum class PuiseuxStatus { certified, inconclusive };

/// Roots sharing a valuation and a leading-coefficient minimal polynomial.
struct PuiseuxRoot {
  BigRat valuation;
  QPoly leading_minpoly;
  unsigned count = 0;
};

/// An explicit root expansion. With a field extension the branch stands for
/// `conjugates` roots obtained by conjugating theta.
struct PuiseuxBranch {
  BigRat valuation;
  QPoly leading_minpoly;
  AlgNum::Modulus field;
  unsigned conjugates = 1;
  /// U modulo t^{known_to}, in powers of t^{1/expansion.D}.
  PSer expansion;
  BigRat known_to;
  std::string to_string() const;
};

struct PuiseuxReport {
  std::vector<PuiseuxRoot> roots;
  unsigned total_distinct = 0;
  std::size_t certified_to = 0;
  PuiseuxStatus status = PuiseuxStatus::certified;
  std::vector<PuiseuxBranch> branches;
  std::vector<std::string> notes;
};

struct PuiseuxOptions {
  unsigned max_depth = 4;
  /// Extend every expandable branch until U is known modulo t^expand_to.
  std::size_t expand_to = 0;
};

/// Nonzero roots with non-negative valuation of sum_i p[i] u^i. All
/// coefficients must share one truncation order.
PuiseuxReport puiseux_roots(const std::vector<TruncTSeries>& p, const PuiseuxOptions& opts = {});

/// The coefficients of u^0, u^1, ... of a bivariate series.
std::vector<TruncTSeries> u_coefficients(const TruncBiSeries& s);

/// s(t, U(t)) for a branch U, known modulo the common precision.
PSer eval_at_branch(const TruncBiSeries& s, const PuiseuxBranch& b);

/// All rational roots of p, or nullopt when the search would need an
/// integer factorization beyond trial division.
std::optional<std::vector<BigRat>> rational_roots(const QPoly& p);

}  // namespace catsolve
