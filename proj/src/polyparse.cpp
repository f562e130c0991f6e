#include "catsolve/polyparse.hpp"

#include <cctype>
#include <stdexcept>

namespace catsolve {

namespace {

class Reader {
public:
  Reader(const RingPtr& ring, const std::string& s) : ring_(ring), s_(s) {}

  QMPoly run() {
    QMPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse_poly: " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QMPoly expr() {
    QMPoly acc = term();
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  QMPoly term() {
    QMPoly acc = unary();
    while (true) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        QMPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        acc = acc.scaled(d.lc().inverse());
      } else {
        return acc;
      }
    }
  }

  QMPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  QMPoly power() {
    QMPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  QMPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QMPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QMPoly::constant(ring_, BigRat(BigInt(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (!ring_->vars.find(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return QMPoly::var(ring_, name, BigRat(1));
    }
    fail("unexpected character");
  }

  const RingPtr& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

QMPoly parse_poly(const RingPtr& ring, const std::string& text) { return Reader(ring, text).run(); }

}  // namespace catsolve
