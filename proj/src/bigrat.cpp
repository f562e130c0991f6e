#include "catsolve/bigrat.hpp"

#include <cctype>

namespace catsolve {

BigRat::BigRat(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("BigRat: zero denominator");
  q_.canonicalize();
}

BigRat BigRat::parse(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string n = s.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(n) || !valid(d)) throw std::invalid_argument("not a rational number: '" + s + "'");
  if (n[0] == '+') n.erase(0, 1);
  if (d[0] == '+') d.erase(0, 1);
  return BigRat(BigInt(n), BigInt(d));
}

BigRat BigRat::inverse() const {
  if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return BigRat(std::move(r));
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.is_zero()) throw std::domain_error("BigRat: division by zero");
  q_ /= o.q_;
  return *this;
}

std::string BigRat::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string BigRat::to_fraction_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t BigRat::hash() const {
  std::size_t h = std::hash<long>{}(mpz_get_si(q_.get_num_mpz_t()));
  h ^= std::hash<long>{}(mpz_get_si(q_.get_den_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

BigRat pow(const BigRat& base, unsigned exp) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exp);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exp);
  return BigRat(n, d);
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace catsolve
