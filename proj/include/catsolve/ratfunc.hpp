#pragma once

#include "catsolve/bigrat.hpp"
#include "catsolve/upoly.hpp"

#include <string>

namespace catsolve {

using QPoly = UPoly<BigRat>;

/// Element of Q(t): num/den with gcd(num, den) = 1 and den monic.
class RatFuncT {
public:
  RatFuncT() : den_(BigRat(1)) {}
  RatFuncT(long v) : num_(BigRat(v)), den_(BigRat(1)) {}  // NOLINT(google-explicit-constructor)
  explicit RatFuncT(const BigRat& v) : num_(v), den_(BigRat(1)) {}
  explicit RatFuncT(QPoly num) : num_(std::move(num)), den_(BigRat(1)) {}
  RatFuncT(QPoly num, QPoly den);

  static RatFuncT t() { return RatFuncT(QPoly::monomial(BigRat(1), 1)); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lead().is_one(); }

  RatFuncT inverse() const;

  RatFuncT& operator+=(const RatFuncT& o);
  RatFuncT& operator-=(const RatFuncT& o);
  RatFuncT& operator*=(const RatFuncT& o);
  RatFuncT& operator/=(const RatFuncT& o) { return *this *= o.inverse(); }
  friend RatFuncT operator+(RatFuncT a, const RatFuncT& b) { return a += b; }
  friend RatFuncT operator-(RatFuncT a, const RatFuncT& b) { return a -= b; }
  friend RatFuncT operator*(RatFuncT a, const RatFuncT& b) { return a *= b; }
  friend RatFuncT operator/(RatFuncT a, const RatFuncT& b) { return a /= b; }
  RatFuncT operator-() const;
  friend bool operator==(const RatFuncT& a, const RatFuncT& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  BigRat eval(const BigRat& t) const { return num_.eval(t) / den_.eval(t); }

  std::string to_string() const;

private:
  void normalize();

  QPoly num_;
  QPoly den_;
};

inline RatFuncT mul_int(const RatFuncT& x, long k) { return x * RatFuncT(k); }

}  // namespace catsolve
