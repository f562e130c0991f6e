#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace catsolve {

/// Element of the prime field Z/pZ for p < 2^31. The modulus travels with
/// the value; a default-constructed element is a modulus-free zero that
/// adopts the modulus of whatever it is combined with.
class Fp {
public:
  Fp() = default;
  /// Modulus-free 0 or 1; any other value needs a modulus.
  explicit Fp(int v) : v_(static_cast<std::uint32_t>(v)) {
    if (v != 0 && v != 1) throw std::invalid_argument("Fp: value needs a modulus");
  }
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp& operator+=(const Fp& o) {
    adopt(o);
    std::uint32_t s = v_ + o.v_;
    v_ = s >= p_ ? s - p_ : s;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    adopt(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    adopt(o);
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const {
    Fp r = *this;
    if (r.v_ != 0) r.v_ = p_ - r.v_;
    return r;
  }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    // extended Euclid on (v, p)
    std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

  std::string to_string() const { return std::to_string(v_); }

private:
  void adopt(const Fp& o) {
    if (p_ == 0) p_ = o.p_;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Deterministic list of primes just below 2^31, largest first.
std::uint32_t nth_large_prime(std::size_t index);

}  // namespace catsolve

namespace catsolve {
inline Fp mul_int(const Fp& x, long k) { return x.is_zero() ? x : x * Fp(k, x.modulus()); }
}  // namespace catsolve
