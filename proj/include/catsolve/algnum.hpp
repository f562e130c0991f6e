#pragma once

// Elements of a simple algebraic extension Q(theta) = Q[x]/(m), m
// irreducible. A value without modulus is a plain rational and adopts the
// modulus of whatever it is combined with.

#include "catsolve/bigrat.hpp"
#include "catsolve/ratfunc.hpp"

#include <memory>
#include <string>

namespace catsolve {

class AlgNum {
public:
  using Modulus = std::shared_ptr<const QPoly>;

  AlgNum() = default;
  AlgNum(int v) : v_(BigRat(v)) {}  // NOLINT(google-explicit-constructor)
  AlgNum(const BigRat& r) : v_(r) {}  // NOLINT(google-explicit-constructor)
  AlgNum(QPoly v, Modulus m);

  /// theta itself in Q[x]/(m).
  static AlgNum generator(const Modulus& m);
  static Modulus make_modulus(const QPoly& minpoly);

  const Modulus& modulus() const { return m_; }
  const QPoly& value() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_.degree() == 0 && v_.lead().is_one(); }
  bool is_rational() const { return v_.degree() <= 0; }
  BigRat rational() const { return v_.coeff(0); }

  AlgNum& operator+=(const AlgNum& o);
  AlgNum& operator-=(const AlgNum& o);
  AlgNum& operator*=(const AlgNum& o);
  AlgNum& operator/=(const AlgNum& o) { return *this *= o.inverse(); }
  friend AlgNum operator+(AlgNum a, const AlgNum& b) { return a += b; }
  friend AlgNum operator-(AlgNum a, const AlgNum& b) { return a -= b; }
  friend AlgNum operator*(AlgNum a, const AlgNum& b) { return a *= b; }
  friend AlgNum operator/(AlgNum a, const AlgNum& b) { return a /= b; }
  AlgNum operator-() const;
  friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.v_ == b.v_; }

  AlgNum inverse() const;
  /// "3/2", or a polynomial in "theta".
  std::string to_string() const;

private:
  void adopt(const AlgNum& o);

  QPoly v_;
  Modulus m_;
};

inline AlgNum mul_int(const AlgNum& x, long k) { return x * AlgNum(BigRat(k)); }

}  // namespace catsolve
