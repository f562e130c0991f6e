#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace catsolve {

/// Arbitrary-precision integer (GMP).
using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class BigRat {
public:
  BigRat() = default;
  BigRat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit BigRat(const BigInt& v) : q_(v) {}
  BigRat(const BigInt& num, const BigInt& den);
  explicit BigRat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "n", "-n" or "n/d".
  static BigRat parse(std::string_view text);

  static BigRat zero() { return BigRat(); }
  static BigRat one() { return BigRat(1); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  BigRat inverse() const;

  BigRat& operator+=(const BigRat& o) { q_ += o.q_; return *this; }
  BigRat& operator-=(const BigRat& o) { q_ -= o.q_; return *this; }
  BigRat& operator*=(const BigRat& o) { q_ *= o.q_; return *this; }
  BigRat& operator/=(const BigRat& o);

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }
  BigRat operator-() const { return BigRat(mpq_class(-q_)); }

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.q_ == b.q_; }
  friend bool operator<(const BigRat& a, const BigRat& b) { return a.q_ < b.q_; }

  /// Compact form used inside polynomials: "3", "-1/2".
  std::string to_string() const;
  /// Always "num/den", used for standalone rational fields in reports.
  std::string to_fraction_string() const;

  std::size_t hash() const;

private:
  mpq_class q_;
};

BigRat pow(const BigRat& base, unsigned exp);
BigInt factorial(unsigned n);

}  // namespace catsolve

namespace catsolve {
inline BigRat mul_int(const BigRat& x, long k) { return x * BigRat(k); }
}  // namespace catsolve
