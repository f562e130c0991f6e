#pragma once

#include "catsolve/monomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catsolve {

template <class F>
struct Term {
  Monomial mono;
  F coeff;
};

/// Thrown when two polynomials with different rings are combined.
class RingMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse multivariate polynomial over the field F. Terms are stored in
/// strictly decreasing order for the ring's monomial order and never carry
/// a zero coefficient.
template <class F>
class MPoly {
public:
  using Coeff = F;

  MPoly() = default;
  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MPoly constant(RingPtr ring, const F& c) {
    MPoly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static MPoly term(RingPtr ring, const Monomial& m, const F& c) {
    MPoly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }
  /// The variable `name` with coefficient `one`.
  static MPoly var(RingPtr ring, const std::string& name, const F& one) {
    Monomial m;
    m.set(ring->vars.index(name), 1);
    return term(std::move(ring), m, one);
  }
  /// Builds from arbitrary (possibly unsorted, repeated, zero) terms.
  static MPoly from_terms(RingPtr ring, std::vector<Term<F>> terms) {
    MPoly p(std::move(ring));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const VarTable& vars() const { return ring_->vars; }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<Term<F>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }

  const Monomial& lm() const { return terms_.front().mono; }
  const F& lc() const { return terms_.front().coeff; }

  F constant_term() const {
    if (!terms_.empty() && terms_.back().mono.deg == 0) return terms_.back().coeff;
    return F();
  }

  int compare(const Monomial& a, const Monomial& b) const { return ring_->order.compare(a, b, nvars()); }

  MPoly& operator+=(const MPoly& o) { return *this = merge(*this, o, false); }
  MPoly& operator-=(const MPoly& o) { return *this = merge(*this, o, true); }
  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    check_same(a, b);
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.is_zero() || b.is_zero()) return MPoly(ring);
    if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    std::vector<Term<F>> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(ring, std::move(prod));
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const F& c) const {
    if (c.is_zero()) return MPoly(ring_);
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Multiplication by c*m keeps the term order (orders are multiplicative).
  MPoly mul_term(const Monomial& m, const F& c) const {
    if (c.is_zero()) return MPoly(ring_);
    MPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
  }

  MPoly pow(unsigned e) const {
    MPoly result = constant(ring_, one_like());
    MPoly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Scales so that the leading coefficient is one.
  MPoly monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inverse());
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!same_ring(a, b)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  int degree(std::size_t var) const {
    int d = is_zero() ? -1 : 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.mono[var]);
    return d;
  }
  int degree(const std::string& name) const { return degree(vars().index(name)); }
  int total_degree() const {
    int d = is_zero() ? -1 : 0;
    for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.mono.deg));
    return d;
  }
  bool involves(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.mono[var] != 0) return true;
    return false;
  }
  bool involves(const std::string& name) const {
    auto i = vars().find(name);
    return i && involves(*i);
  }

  MPoly derivative(std::size_t var) const {
    std::vector<Term<F>> out;
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Term<F> d = t;
      d.coeff = mul_int(t.coeff, t.mono[var]);
      d.mono.set(var, static_cast<std::uint16_t>(t.mono[var] - 1));
      out.push_back(std::move(d));
    }
    return from_terms(ring_, std::move(out));
  }
  MPoly derivative(const std::string& name) const { return derivative(vars().index(name)); }

  /// Coefficients with respect to `var`: result[i] multiplies var^i and no
  /// longer involves var.
  std::vector<MPoly> coeffs_in(std::size_t var) const {
    std::vector<std::vector<Term<F>>> buckets(static_cast<std::size_t>(std::max(degree(var), 0)) + 1);
    for (const auto& t : terms_) {
      Term<F> c = t;
      c.mono.set(var, 0);
      buckets[t.mono[var]].push_back(std::move(c));
    }
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
      MPoly p(ring_);
      p.terms_ = std::move(b);
      p.canonicalize();
      out.push_back(std::move(p));
    }
    return out;
  }

  static MPoly from_coeffs(const RingPtr& ring, std::size_t var, const std::vector<MPoly>& cs) {
    std::vector<Term<F>> out;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (const auto& t : cs[i].terms_) {
        Term<F> c = t;
        c.mono.set(var, static_cast<std::uint16_t>(c.mono[var] + i));
        out.push_back(std::move(c));
      }
    return from_terms(ring, std::move(out));
  }

  /// Leading coefficient with respect to `var` (a polynomial free of var).
  MPoly lead_coeff_in(std::size_t var) const {
    auto cs = coeffs_in(var);
    return cs.back();
  }

  /// Replaces `var` by the constant c.
  MPoly eval_var(std::size_t var, const F& c) const {
    std::vector<Term<F>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term<F> r = t;
      F f = t.coeff;
      for (std::uint16_t k = 0; k < t.mono[var]; ++k) f *= c;
      r.coeff = f;
      r.mono.set(var, 0);
      out.push_back(std::move(r));
    }
    return from_terms(ring_, std::move(out));
  }

  /// Replaces `var` by the polynomial q (same ring).
  MPoly substitute(std::size_t var, const MPoly& q) const {
    check_same(*this, q);
    auto cs = coeffs_in(var);
    MPoly acc(ring_);
    for (std::size_t i = cs.size(); i-- > 0;) acc = acc * q + cs[i];
    return acc;
  }
  MPoly substitute(const std::string& name, const MPoly& q) const { return substitute(vars().index(name), q); }

  /// Simultaneous substitution of several variables (same ring).
  MPoly substitute_all(const std::vector<std::pair<std::size_t, MPoly>>& subs) const {
    std::vector<const MPoly*> sub_of(nvars(), nullptr);
    for (const auto& [v, q] : subs) sub_of[v] = &q;
    std::map<std::pair<std::size_t, unsigned>, MPoly> powers;
    auto power = [&](std::size_t v, unsigned e) -> const MPoly& {
      unsigned have = 1;
      while (have < e && powers.count({v, have + 1})) ++have;
      if (!powers.count({v, 1})) powers.emplace(std::make_pair(v, 1u), *sub_of[v]);
      for (; have < e; ++have) powers.emplace(std::make_pair(v, have + 1), powers.at({v, have}) * *sub_of[v]);
      return powers.at({v, e});
    };
    MPoly acc(ring_);
    std::vector<Term<F>> kept;
    for (const auto& t : terms_) {
      Term<F> rest = t;
      MPoly factor = constant(ring_, t.coeff);
      bool touched = false;
      for (std::size_t v = 0; v < nvars(); ++v) {
        if (sub_of[v] == nullptr || t.mono[v] == 0) continue;
        factor = factor * power(v, t.mono[v]);
        rest.mono.set(v, 0);
        touched = true;
      }
      if (!touched) {
        kept.push_back(t);
        continue;
      }
      rest.coeff = one_like_of(t.coeff);
      acc += factor.mul_term(rest.mono, rest.coeff);
    }
    return acc + from_terms(ring_, std::move(kept));
  }

  /// Moves the polynomial into another ring, matching variables by name.
  /// Variables absent from the target must not occur.
  MPoly to_ring(const RingPtr& target) const {
    std::vector<int> map(nvars(), -1);
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto j = target->vars.find(vars().name(i));
      if (j) map[i] = static_cast<int>(*j);
    }
    std::vector<Term<F>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term<F> r{Monomial{}, t.coeff};
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (t.mono[i] == 0) continue;
        if (map[i] < 0)
          throw std::invalid_argument("to_ring: variable '" + vars().name(i) + "' missing in target ring");
        r.mono.set(static_cast<std::size_t>(map[i]), t.mono[i]);
      }
      out.push_back(std::move(r));
    }
    return from_terms(target, std::move(out));
  }

  template <class G, class Fn>
  MPoly<G> map_coeffs(const RingPtr& target, Fn&& fn) const {
    std::vector<Term<G>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.mono, fn(t.coeff)});
    return MPoly<G>::from_terms(target, std::move(out));
  }

  /// Canonical text form, e.g. "64*t^3*z0^3 - 2*t + 1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string cs = t.coeff.to_string();
      bool neg = !cs.empty() && cs[0] == '-' && cs.find(' ') == std::string::npos;
      if (neg) cs.erase(0, 1);
      if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      std::string ms = monomial_to_string(t.mono, vars());
      if (ms == "1") {
        out += cs;
      } else if (cs == "1") {
        out += ms;
      } else {
        out += cs + "*" + ms;
      }
    }
    return out;
  }

  /// Re-sorts and merges terms; drops zero coefficients.
  void canonicalize() {
    if (terms_.empty()) return;
    const auto& order = ring_->order;
    std::size_t nv = ring_->nvars();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term<F>& a, const Term<F>& b) { return order.compare(a.mono, b.mono, nv) > 0; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      Term<F> acc = std::move(terms_[r]);
      std::size_t s = r + 1;
      while (s < terms_.size() && terms_[s].mono == acc.mono) acc.coeff += terms_[s++].coeff;
      r = s;
      if (!acc.coeff.is_zero()) terms_[w++] = std::move(acc);
    }
    terms_.resize(w);
  }

  std::vector<Term<F>>& mutable_terms() { return terms_; }

  F one_like() const {
    if (!terms_.empty()) return one_like_of(terms_[0].coeff);
    return F(1);
  }
  static F one_like_of(const F& c) { return c.is_zero() ? F(1) : c * c.inverse(); }

private:
  static bool same_ring(const MPoly& a, const MPoly& b) {
    return a.ring_ == b.ring_ || (a.ring_ && b.ring_ && *a.ring_ == *b.ring_);
  }
  static void check_same(const MPoly& a, const MPoly& b) {
    if (!a.ring_ || !b.ring_) {
      if (!a.ring_ && !b.ring_) throw RingMismatch("polynomial without ring");
      return;
    }
    if (!same_ring(a, b)) throw RingMismatch("mismatched variable tables or monomial orders");
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    check_same(a, b);
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    MPoly r(ring);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const auto& order = ring->order;
    std::size_t nv = ring->nvars();
    while (i < a.size() && j < b.size()) {
      int c = order.compare(a.terms_[i].mono, b.terms_[j].mono, nv);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        F s = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.size(); ++j) {
      r.terms_.push_back(b.terms_[j]);
      if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term<F>> terms_;
};

}  // namespace catsolve
