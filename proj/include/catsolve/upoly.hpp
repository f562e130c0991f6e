#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace catsolve {

/// Dense univariate polynomial over a field F; coefficient i multiplies x^i.
/// The coefficient vector never ends in a zero.
template <class F>
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit UPoly(const F& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
  }

  static UPoly monomial(const F& coeff, std::size_t degree) {
    std::vector<F> c(degree + 1);
    c[degree] = coeff;
    return UPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree, -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(); }
  const F& lead() const { return c_.back(); }
  std::size_t size() const { return c_.size(); }

  void set_coeff(std::size_t i, const F& v) {
    if (i >= c_.size()) c_.resize(i + 1);
    c_[i] = v;
    trim();
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly scaled(const F& s) const {
    if (s.is_zero()) return UPoly();
    UPoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  /// Multiplies by x^k.
  UPoly shifted(std::size_t k) const {
    if (is_zero()) return UPoly();
    std::vector<F> r(k);
    r.insert(r.end(), c_.begin(), c_.end());
    return UPoly(std::move(r));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division over the field: a = q*b + r, deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<F> rem = a.c_;
    std::vector<F> quo(a.c_.size() - b.c_.size() + 1);
    F inv = b.lead().inverse();
    for (int i = static_cast<int>(quo.size()) - 1; i >= 0; --i) {
      const F& top = rem[static_cast<std::size_t>(i) + b.c_.size() - 1];
      if (top.is_zero()) continue;
      F q = top * inv;
      quo[static_cast<std::size_t>(i)] = q;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= q * b.c_[j];
    }
    rem.resize(b.c_.size() - 1);
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<F> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mul_int(c_[i], static_cast<long>(i));
    return UPoly(std::move(r));
  }

  F eval(const F& x) const {
    F acc = F();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Composition this(q).
  UPoly compose(const UPoly& q) const {
    UPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + UPoly(c_[i]);
    return acc;
  }

  std::string to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string cs = c_[i].to_string();
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (i == 0) {
        out += cs;
        continue;
      }
      if (cs != "1") out += cs + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<F> c_;
};

template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<UPoly<F>, UPoly<F>, UPoly<F>> xgcd(UPoly<F> a, UPoly<F> b) {
  UPoly<F> s0, s1, t0, t1;
  F one = !a.is_zero() ? a.lead() * a.lead().inverse() : b.lead() * b.lead().inverse();
  s0 = UPoly<F>(one);
  t1 = UPoly<F>(one);
  while (!b.is_zero()) {
    auto [q, r] = UPoly<F>::divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    auto s2 = s0 - q * s1;
    auto t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.is_zero()) return {a, s0, t0};
  F inv = a.lead().inverse();
  return {a.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// Squarefree decomposition over a characteristic-zero field (Yun).
/// Returns factors f_1, f_2, ... (monic, possibly constant 1) with
/// p = lc * prod f_i^i.
template <class F>
std::vector<UPoly<F>> squarefree_decomposition(const UPoly<F>& p) {
  std::vector<UPoly<F>> out;
  if (p.degree() <= 0) return out;
  UPoly<F> dp = p.derivative();
  UPoly<F> a = gcd(p, dp);
  UPoly<F> b = p / a;
  UPoly<F> c = dp / a;
  UPoly<F> d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly<F> f = gcd(b, d);
    out.push_back(f);
    b = b / f;
    c = d / f;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

}  // namespace catsolve
