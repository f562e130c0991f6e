#include "catsolve/algnum.hpp"

#include <stdexcept>

namespace catsolve {

AlgNum::AlgNum(QPoly v, Modulus m) : v_(std::move(v)), m_(std::move(m)) {
  if (m_ && v_.degree() >= m_->degree()) v_ = v_ % *m_;
}

AlgNum::Modulus AlgNum::make_modulus(const QPoly& minpoly) {
  if (minpoly.degree() < 1) throw std::invalid_argument("AlgNum: modulus must have positive degree");
  return std::make_shared<const QPoly>(minpoly.monic());
}

AlgNum AlgNum::generator(const Modulus& m) {
  return AlgNum(QPoly(std::vector<BigRat>{BigRat(0), BigRat(1)}), m);
}

void AlgNum::adopt(const AlgNum& o) {
  if (!o.m_) return;
  if (!m_) m_ = o.m_;
  else if (m_ != o.m_ && !(*m_ == *o.m_)) throw std::invalid_argument("AlgNum: different extensions");
}

AlgNum& AlgNum::operator+=(const AlgNum& o) {
  adopt(o);
  v_ += o.v_;
  return *this;
}

AlgNum& AlgNum::operator-=(const AlgNum& o) {
  adopt(o);
  v_ -= o.v_;
  return *this;
}

AlgNum& AlgNum::operator*=(const AlgNum& o) {
  adopt(o);
  if (v_.degree() <= 0 || o.v_.degree() <= 0) {
    v_ = v_.degree() <= 0 ? o.v_.scaled(v_.coeff(0)) : v_.scaled(o.v_.coeff(0));
    return *this;
  }
  v_ = v_ * o.v_;
  if (m_ && v_.degree() >= m_->degree()) v_ = v_ % *m_;
  return *this;
}

AlgNum AlgNum::operator-() const {
  AlgNum r = *this;
  r.v_ = -r.v_;
  return r;
}

AlgNum AlgNum::inverse() const {
  if (is_zero()) throw std::domain_error("AlgNum: inverse of zero");
  if (v_.degree() == 0) return AlgNum(QPoly(v_.coeff(0).inverse()), m_);
  auto [g, s, t] = xgcd(v_, *m_);
  if (g.degree() != 0) throw std::domain_error("AlgNum: modulus is not irreducible");
  return AlgNum(s, m_);
}

std::string AlgNum::to_string() const {
  if (v_.degree() <= 0) return v_.coeff(0).to_string();
  return "(" + v_.to_string("theta") + ")";
}

}  // namespace catsolve
