#include "catsolve/ratfunc.hpp"

#include <stdexcept>

namespace catsolve {

RatFuncT::RatFuncT(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFuncT: zero denominator");
  normalize();
}

void RatFuncT::normalize() {
  if (num_.is_zero()) {
    den_ = QPoly(BigRat(1));
    return;
  }
  if (den_.degree() > 0) {
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.lead().is_one()) {
    BigRat inv = den_.lead().inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFuncT RatFuncT::inverse() const {
  if (is_zero()) throw std::domain_error("RatFuncT: inverse of zero");
  return RatFuncT(den_, num_);
}

RatFuncT& RatFuncT::operator+=(const RatFuncT& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFuncT& RatFuncT::operator-=(const RatFuncT& o) { return *this += -o; }

RatFuncT& RatFuncT::operator*=(const RatFuncT& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFuncT();
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFuncT RatFuncT::operator-() const {
  RatFuncT r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RatFuncT::to_string() const {
  std::string n = num_.to_string("t");
  if (den_.degree() == 0) return n;
  bool simple_num = num_.size() <= 1;
  return (simple_num ? n : "(" + n + ")") + "/(" + den_.to_string("t") + ")";
}

}  // namespace catsolve
