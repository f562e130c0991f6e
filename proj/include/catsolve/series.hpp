#pragma once

// Truncated power series in t: bivariate ones with polynomial coefficients
// in u (K[u][[t]]) and univariate ones, possibly in a root of t. The unique
// series solution of a DDE system is computed by fixed-point iteration.

#include "catsolve/bigrat.hpp"
#include "catsolve/dde.hpp"
#include "catsolve/ratfunc.hpp"

#include <map>
#include <string>
#include <vector>

namespace catsolve {

/// Element of Q[u][[t]] known modulo t^N: coeff(j) is the u-polynomial
/// multiplying t^j.
class TruncBiSeries {
public:
  TruncBiSeries() = default;
  explicit TruncBiSeries(std::size_t order) : c_(order) {}
  /// The polynomial p(u) viewed as a series constant in t.
  static TruncBiSeries constant(const QPoly& p, std::size_t order);

  std::size_t order() const { return c_.size(); }
  const QPoly& coeff(std::size_t j) const { return c_.at(j); }
  QPoly& coeff(std::size_t j) { return c_.at(j); }
  const std::vector<QPoly>& coeffs() const { return c_; }
  bool is_zero() const;

  TruncBiSeries truncated(std::size_t order) const;
  TruncBiSeries& operator+=(const TruncBiSeries& o);
  TruncBiSeries& operator-=(const TruncBiSeries& o);
  friend TruncBiSeries operator+(TruncBiSeries a, const TruncBiSeries& b) { return a += b; }
  friend TruncBiSeries operator-(TruncBiSeries a, const TruncBiSeries& b) { return a -= b; }
  friend TruncBiSeries operator*(const TruncBiSeries& a, const TruncBiSeries& b);
  TruncBiSeries scaled(const BigRat& c) const;
  TruncBiSeries mul_poly(const QPoly& p) const;
  /// Multiplies by t^s u^e.
  TruncBiSeries shifted(std::size_t s, std::size_t e) const;
  /// Divided difference (S(u) - S(a)) / (u - a), coefficient-wise.
  TruncBiSeries delta(const BigRat& a) const;
  /// S(u + a).
  TruncBiSeries translate_u(const BigRat& a) const;

  /// Equality of the common truncation.
  friend bool operator==(const TruncBiSeries& a, const TruncBiSeries& b);

  std::string to_string(const std::string& u = "u") const;

private:
  std::vector<QPoly> c_;
};

/// Series in t^{1/d} over Q known modulo t^N: coefficient i multiplies
/// t^{i/d}, with N*d stored coefficients.
class TruncTSeries {
public:
  TruncTSeries() = default;
  TruncTSeries(std::size_t order, unsigned ramification = 1)
      : n_(order), d_(ramification), c_(order * ramification) {}
  TruncTSeries(std::vector<BigRat> coeffs, unsigned ramification = 1);

  std::size_t order() const { return n_; }
  unsigned ramification() const { return d_; }
  const BigRat& coeff(std::size_t i) const { return c_.at(i); }
  BigRat& coeff(std::size_t i) { return c_.at(i); }
  const std::vector<BigRat>& coeffs() const { return c_; }
  bool is_zero() const;
  /// Index of the first nonzero coefficient, or coeffs().size() if zero.
  std::size_t valuation_index() const;

  TruncTSeries truncated(std::size_t order) const;
  TruncTSeries& operator+=(const TruncTSeries& o);
  TruncTSeries& operator-=(const TruncTSeries& o);
  friend TruncTSeries operator+(TruncTSeries a, const TruncTSeries& b) { return a += b; }
  friend TruncTSeries operator-(TruncTSeries a, const TruncTSeries& b) { return a -= b; }
  friend TruncTSeries operator*(const TruncTSeries& a, const TruncTSeries& b);
  TruncTSeries scaled(const BigRat& c) const;
  friend bool operator==(const TruncTSeries& a, const TruncTSeries& b);

  /// As a bivariate series constant in u (ramification 1 only).
  TruncBiSeries to_bi() const;
  std::string to_string() const;

private:
  std::size_t n_ = 0;
  unsigned d_ = 1;
  std::vector<BigRat> c_;
};

/// The j-th u-derivative at u = a, coefficient-wise.
TruncTSeries specialize(const TruncBiSeries& s, const BigRat& a, unsigned j);

/// Evaluates p with t and u taken literally and every other variable bound
/// to a series; the result is known modulo t^N.
TruncBiSeries eval_at_series(const QMPoly& p, const std::map<std::string, TruncBiSeries>& bind, std::size_t N,
                             const std::string& t = "t", const std::string& u = "u");
TruncBiSeries eval_at_series(const QMPoly& p, const std::map<std::string, TruncTSeries>& bind, std::size_t N,
                             const std::string& t = "t", const std::string& u = "u");

/// jacobi and gauss_seidel run the plain fixed-point iteration (all
/// unknowns at once, or one after the other); online computes coefficient
/// j+1 of every unknown from coefficients 0..j only.
enum class Schedule { jacobi, gauss_seidel, online };

/// One fixed-point step f + t Q(nabla^k F) modulo t^N. Parameters must be
/// bound.
std::vector<TruncBiSeries> fixed_point_step(const DDESystem& sys, const std::vector<TruncBiSeries>& F, std::size_t N,
                                            Schedule schedule = Schedule::jacobi);

/// The unique series solution modulo t^N.
std::vector<TruncBiSeries> solve_series(const DDESystem& sys, std::size_t N, Schedule schedule = Schedule::online);

/// F_i - (f_i + t Q_i(nabla^k F)) modulo t^N.
std::vector<TruncBiSeries> residuals(const DDESystem& sys, const std::vector<TruncBiSeries>& F, std::size_t N);

/// Bindings x_i -> F_i, z_{k i + l} -> l-th derivative of F_i at a (as a
/// series constant in u) for evaluating a numerator system. The series are
/// translated when the numerator system was shifted to a = 0.
std::map<std::string, TruncBiSeries> numerator_bindings(const NumeratorSystem& ns,
                                                        const std::vector<TruncBiSeries>& F);

/// The polynomial p(u) of a ring element involving only u.
QPoly to_upoly(const QMPoly& p, const std::string& u);

}  // namespace catsolve
