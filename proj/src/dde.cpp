#include "catsolve/dde.hpp"

#include "catsolve/polyops.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace catsolve {

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
  enum Kind { ident, number, sym, end } kind = end;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t c = 0; c < count; ++c, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) advance(1);
      t.kind = Token::ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      t.kind = Token::number;
    } else if (std::string("{};,=+-*/^()[]").find(c) != std::string::npos) {
      advance(1);
      t.kind = Token::sym;
    } else {
      throw DslError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = src.substr(start, i - start);
    out.push_back(std::move(t));
  }
  Token e;
  e.line = line;
  e.col = col;
  out.push_back(e);
  return out;
}

// ------------------------------------------------------------------ AST

struct Node {
  enum Kind { num, sym, unknown, spec, delta, add, sub, mul, div, neg, pow } kind;
  BigRat value;
  std::string name;
  std::size_t index = 0;
  unsigned order = 0;
  std::unique_ptr<Node> l, r;
  int line = 0, col = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct Equation {
  std::size_t unknown;
  NodePtr rhs;
  int line, col;
};

struct Decls {
  std::vector<std::string> unknowns;
  std::string catalytic = "u";
  std::string point_name = "a";
  BigRat a;
  std::optional<unsigned> order;
  std::vector<Param> params;
  std::vector<Equation> equations;
  bool point_seen = false;
};

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Decls run() {
    expect_ident("system");
    expect("{");
    while (!peek_is("}")) {
      if (at_end()) fail("unexpected end of input, expected '}'");
      declaration();
    }
    expect("}");
    if (!at_end()) fail("unexpected text after system block");
    if (d_.unknowns.empty()) throw DslError("no unknowns declared", 1, 1);
    for (std::size_t i = 0; i < d_.unknowns.size(); ++i) {
      bool found = false;
      for (const auto& e : d_.equations) found = found || e.unknown == i;
      if (!found) throw DslError("no equation for unknown " + d_.unknowns[i], cur().line, cur().col);
    }
    return std::move(d_);
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  bool at_end() const { return cur().kind == Token::end; }
  bool peek_is(const std::string& s) const { return cur().kind == Token::sym && cur().text == s; }
  [[noreturn]] void fail(const std::string& msg) const { throw DslError(msg, cur().line, cur().col); }
  void expect(const std::string& s) {
    if (!peek_is(s)) fail("expected '" + s + "'" + (at_end() ? "" : " but found '" + cur().text + "'"));
    ++pos_;
  }
  bool accept(const std::string& s) {
    if (peek_is(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string ident() {
    if (cur().kind != Token::ident) fail("expected identifier");
    return toks_[pos_++].text;
  }
  void expect_ident(const std::string& s) {
    if (cur().kind != Token::ident || cur().text != s) fail("expected '" + s + "'");
    ++pos_;
  }
  unsigned integer() {
    if (cur().kind != Token::number) fail("expected integer");
    return static_cast<unsigned>(std::stoul(toks_[pos_++].text));
  }
  BigRat rational() {
    bool negative = accept("-");
    if (cur().kind != Token::number) fail("expected rational number");
    BigInt num(toks_[pos_++].text);
    BigInt den(1);
    if (accept("/")) {
      if (cur().kind != Token::number) fail("expected denominator");
      den = BigInt(toks_[pos_++].text);
      if (den == 0) fail("zero denominator");
    }
    BigRat r(num, den);
    return negative ? -r : r;
  }

  bool is_reserved(const std::string& s) const {
    if (s == "t" || s == "u" || s == "D" || s == "system") return true;
    if (s.size() > 1 && (s[0] == 'x' || s[0] == 'z' || s[0] == 'u') &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return true;
    return false;
  }
  void check_fresh(const std::string& s) {
    if (is_reserved(s)) fail("'" + s + "' is a reserved name");
    if (std::find(d_.unknowns.begin(), d_.unknowns.end(), s) != d_.unknowns.end() || s == d_.catalytic ||
        (d_.point_seen && s == d_.point_name))
      fail("name '" + s + "' already declared");
    for (const auto& p : d_.params)
      if (p.name == s) fail("name '" + s + "' already declared");
  }

  void declaration() {
    if (cur().kind != Token::ident) fail("expected a declaration or an equation");
    const std::string& word = cur().text;
    if (word == "unknowns" && !is_unknown(word)) {
      ++pos_;
      if (!d_.unknowns.empty()) fail("unknowns declared twice");
      if (!d_.equations.empty()) fail("unknowns must be declared before the equations");
      do {
        std::string n = ident();
        check_fresh(n);
        d_.unknowns.push_back(n);
      } while (accept(","));
      expect(";");
    } else if (word == "catalytic" && !is_unknown(word)) {
      ++pos_;
      if (!d_.equations.empty()) fail("declarations must precede the equations");
      std::string c = ident();
      if (is_reserved(c) && c != "u") fail("'" + c + "' is a reserved name");
      d_.catalytic = c;
      expect(";");
    } else if (word == "point" && !is_unknown(word)) {
      ++pos_;
      if (!d_.equations.empty()) fail("declarations must precede the equations");
      std::string name = ident();
      check_fresh(name);
      d_.point_name = name;
      d_.point_seen = true;
      expect("=");
      d_.a = rational();
      expect(";");
    } else if (word == "param" && !is_unknown(word)) {
      ++pos_;
      if (!d_.equations.empty()) fail("declarations must precede the equations");
      std::string name = ident();
      check_fresh(name);
      Param p{name, std::nullopt};
      if (accept("=")) p.value = rational();
      d_.params.push_back(p);
      expect(";");
    } else if (word == "order" && !is_unknown(word)) {
      ++pos_;
      d_.order = integer();
      expect(";");
    } else {
      int line = cur().line, col = cur().col;
      std::string lhs = ident();
      auto it = std::find(d_.unknowns.begin(), d_.unknowns.end(), lhs);
      if (it == d_.unknowns.end()) throw DslError("left-hand side '" + lhs + "' is not a declared unknown", line, col);
      std::size_t idx = static_cast<std::size_t>(it - d_.unknowns.begin());
      for (const auto& e : d_.equations)
        if (e.unknown == idx) throw DslError("second equation for " + lhs, line, col);
      expect("=");
      NodePtr rhs = expr();
      expect(";");
      d_.equations.push_back({idx, std::move(rhs), line, col});
    }
  }

  bool is_unknown(const std::string& s) const {
    return std::find(d_.unknowns.begin(), d_.unknowns.end(), s) != d_.unknowns.end();
  }

  NodePtr make(Node::Kind k) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->line = cur().line;
    n->col = cur().col;
    return n;
  }
  NodePtr binary(Node::Kind k, NodePtr l, NodePtr r) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->line = l->line;
    n->col = l->col;
    n->l = std::move(l);
    n->r = std::move(r);
    return n;
  }

  NodePtr expr() {
    NodePtr acc = term();
    while (true) {
      if (accept("+")) acc = binary(Node::add, std::move(acc), term());
      else if (accept("-")) acc = binary(Node::sub, std::move(acc), term());
      else return acc;
    }
  }
  NodePtr term() {
    NodePtr acc = unary();
    while (true) {
      if (accept("*")) acc = binary(Node::mul, std::move(acc), unary());
      else if (accept("/")) acc = binary(Node::div, std::move(acc), unary());
      else return acc;
    }
  }
  NodePtr unary() {
    if (peek_is("-")) {
      NodePtr n = make(Node::neg);
      ++pos_;
      n->l = unary();
      return n;
    }
    if (accept("+")) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (peek_is("^")) {
      NodePtr n = make(Node::pow);
      ++pos_;
      n->order = integer();
      n->l = std::move(base);
      return n;
    }
    return base;
  }

  std::size_t unknown_index(const std::string& s) {
    auto it = std::find(d_.unknowns.begin(), d_.unknowns.end(), s);
    if (it == d_.unknowns.end()) fail("'" + s + "' is not a declared unknown");
    return static_cast<std::size_t>(it - d_.unknowns.begin());
  }

  // the argument of F(...) must denote the evaluation point
  bool point_argument() {
    if (cur().kind == Token::ident) {
      std::string s = cur().text;
      if (s == d_.point_name) {
        ++pos_;
        return true;
      }
      if (s == d_.catalytic) {
        ++pos_;
        return false;
      }
      fail("unsupported argument '" + s + "'");
    }
    BigRat v = rational();
    if (!(v == d_.a)) fail("evaluation at " + v.to_string() + " differs from the declared point; only one point is supported");
    return true;
  }

  NodePtr atom() {
    if (accept("(")) {
      NodePtr e = expr();
      expect(")");
      return e;
    }
    if (cur().kind == Token::number) {
      NodePtr n = make(Node::num);
      n->value = BigRat(BigInt(cur().text));
      ++pos_;
      return n;
    }
    if (cur().kind != Token::ident) fail(at_end() ? "unexpected end of input" : "unexpected '" + cur().text + "'");
    NodePtr n = make(Node::sym);
    std::string name = toks_[pos_++].text;
    if (name == "D" && (peek_is("[") || peek_is("^"))) {
      unsigned j = 1;
      if (accept("^")) j = integer();
      if (j == 0) fail("D^0 is not allowed");
      expect("[");
      n->kind = Node::delta;
      n->index = unknown_index(ident());
      n->order = j;
      expect("]");
      return n;
    }
    if (is_unknown(name)) {
      n->index = unknown_index(name);
      n->kind = Node::unknown;
      if (accept("(")) {
        // F(a), F(t, a), F(t, u)
        bool at_point;
        if (cur().kind == Token::ident && cur().text == "t" && toks_[pos_ + 1].text == ",") {
          pos_ += 2;
        }
        at_point = point_argument();
        expect(")");
        if (at_point) n->kind = Node::spec;
      }
      return n;
    }
    n->name = name;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Decls d_;
};

unsigned max_delta_order(const Node& n) {
  unsigned r = 0;
  if (n.kind == Node::delta) r = n.order;
  if (n.kind == Node::spec) r = 1;
  if (n.l) r = std::max(r, max_delta_order(*n.l));
  if (n.r) r = std::max(r, max_delta_order(*n.r));
  return r;
}

// --------------------------------------------------- Taylor coordinates

QMPoly var_of(const RingPtr& ring, const std::string& name) { return QMPoly::var(ring, name, BigRat(1)); }
QMPoly cst(const RingPtr& ring, const BigRat& c) { return QMPoly::constant(ring, c); }

/// num / (u - a)^e
struct TForm {
  QMPoly num;
  unsigned e = 0;
};

struct TaylorContext {
  RingPtr ring;
  std::string u;
  BigRat a;
  unsigned n = 0, k = 0;

  QMPoly lin() const { return var_of(ring, u) - cst(ring, a); }
  QMPoly lin_pow(unsigned e) const { return lin().pow(e); }

  void reduce(TForm& f) const {
    if (f.num.is_zero()) {
      f.e = 0;
      return;
    }
    std::size_t uv = ring->vars.index(u);
    QMPoly l = lin();
    while (f.e > 0 && f.num.eval_var(uv, a).is_zero()) {
      f.num = divide_or_throw(f.num, l, "taylor");
      --f.e;
    }
  }

  QMPoly x(std::size_t i) const { return var_of(ring, "x" + std::to_string(i + 1)); }
  QMPoly z(std::size_t j) const { return var_of(ring, "z" + std::to_string(j)); }

  /// Numerator of Y_{i,j} (i 0-based), over (u - a)^j.
  QMPoly delta_num(std::size_t i, unsigned j) const {
    QMPoly num = x(i);
    QMPoly lp = cst(ring, BigRat(1));
    for (unsigned l = 0; l < j; ++l) {
      num -= (lp * z(k * i + l)).scaled(BigRat(BigInt(1), factorial(l)));
      lp *= lin();
    }
    return num;
  }
};

/// Rings: Taylor ring (x, z, t, u, params) and nabla ring (y, t, u, params).
std::vector<std::string> taylor_names(unsigned n, unsigned k, const std::string& u, const std::vector<Param>& params) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (unsigned j = 0; j < n * k; ++j) names.push_back("z" + std::to_string(j));
  names.push_back("t");
  names.push_back(u);
  for (const auto& p : params) names.push_back(p.name);
  return names;
}

std::string y_name_of(const std::string& unknown, unsigned j) {
  if (j == 0) return unknown;
  if (j == 1) return "D[" + unknown + "]";
  return "D^" + std::to_string(j) + "[" + unknown + "]";
}

RingPtr nabla_ring(const std::vector<std::string>& unknowns, unsigned k, const std::string& u,
                   const std::vector<Param>& params) {
  std::vector<std::string> names;
  for (const auto& f : unknowns)
    for (unsigned j = 0; j <= k; ++j) names.push_back(y_name_of(f, j));
  names.push_back("t");
  names.push_back(u);
  for (const auto& p : params) names.push_back(p.name);
  return make_ring(names);
}

class Evaluator {
public:
  Evaluator(const TaylorContext& ctx, const Decls& d) : ctx_(ctx), d_(d) {}

  TForm eval(const Node& n) const {
    const RingPtr& R = ctx_.ring;
    switch (n.kind) {
      case Node::num:
        return {cst(R, n.value), 0};
      case Node::sym: {
        if (n.name == "t") return {var_of(R, "t"), 0};
        if (n.name == d_.catalytic) return {var_of(R, ctx_.u), 0};
        for (const auto& p : d_.params)
          if (p.name == n.name) return {var_of(R, p.name), 0};
        if (n.name == d_.point_name) return {cst(R, d_.a), 0};
        throw DslError("unknown symbol '" + n.name + "'", n.line, n.col);
      }
      case Node::unknown:
        return {ctx_.x(n.index), 0};
      case Node::spec:
        return {ctx_.z(ctx_.k * n.index), 0};
      case Node::delta:
        return {ctx_.delta_num(n.index, n.order), n.order};
      case Node::neg: {
        TForm a = eval(*n.l);
        return {-a.num, a.e};
      }
      case Node::add:
      case Node::sub: {
        TForm a = eval(*n.l), b = eval(*n.r);
        unsigned e = std::max(a.e, b.e);
        QMPoly an = a.num * ctx_.lin_pow(e - a.e), bn = b.num * ctx_.lin_pow(e - b.e);
        TForm r{n.kind == Node::add ? an + bn : an - bn, e};
        ctx_.reduce(r);
        return r;
      }
      case Node::mul: {
        TForm a = eval(*n.l), b = eval(*n.r);
        TForm r{a.num * b.num, a.e + b.e};
        ctx_.reduce(r);
        return r;
      }
      case Node::pow: {
        TForm a = eval(*n.l);
        TForm r{a.num.pow(n.order), a.e * n.order};
        ctx_.reduce(r);
        return r;
      }
      case Node::div: {
        TForm a = eval(*n.l), b = eval(*n.r);
        if (b.num.is_zero()) throw DslError("division by zero", n.r->line, n.r->col);
        // b must be c * (u - a)^r
        std::size_t uv = ctx_.ring->vars.index(ctx_.u);
        unsigned r = 0;
        QMPoly bn = b.num;
        while (!bn.is_constant() && bn.eval_var(uv, ctx_.a).is_zero()) {
          bn = divide_or_throw(bn, ctx_.lin(), "taylor");
          ++r;
        }
        if (!bn.is_constant())
          throw DslError("division is only allowed by a constant times a power of (" + d_.catalytic + " - " +
                             d_.point_name + ")",
                         n.r->line, n.r->col);
        TForm q{(a.num * ctx_.lin_pow(b.e)).scaled(bn.lc().inverse()), a.e + r};
        ctx_.reduce(q);
        return q;
      }
    }
    throw std::logic_error("unreachable");
  }

private:
  const TaylorContext& ctx_;
  const Decls& d_;
};

/// Taylor ring polynomial -> nabla ring: x_i = y_{i,0},
/// z_{k i + l} = l! (y_{i,l} - (u - a) y_{i,l+1}); other variables by name.
QMPoly taylor_to_nabla(const QMPoly& p, const RingPtr& nabla, const std::vector<std::string>& unknowns, unsigned k,
                       const BigRat& a, const std::map<std::string, std::string>& rename) {
  const VarTable& tv = p.vars();
  std::vector<QMPoly> images;
  std::string u = rename.count("u") ? rename.at("u") : "u";
  QMPoly lin = var_of(nabla, u) - cst(nabla, a);
  for (std::size_t v = 0; v < tv.size(); ++v) {
    const std::string& name = tv.name(v);
    if (name[0] == 'x' && name.size() > 1 && std::isdigit(static_cast<unsigned char>(name[1]))) {
      std::size_t i = std::stoul(name.substr(1)) - 1;
      images.push_back(var_of(nabla, y_name_of(unknowns[i], 0)));
    } else if (name[0] == 'z' && name.size() > 1 && std::isdigit(static_cast<unsigned char>(name[1]))) {
      std::size_t j = std::stoul(name.substr(1));
      std::size_t i = j / k;
      unsigned l = static_cast<unsigned>(j % k);
      QMPoly img = var_of(nabla, y_name_of(unknowns[i], l)) - lin * var_of(nabla, y_name_of(unknowns[i], l + 1));
      images.push_back(img.scaled(BigRat(factorial(l))));
    } else {
      auto it = rename.find(name);
      images.push_back(var_of(nabla, it == rename.end() ? name : it->second));
    }
  }
  return compose(p, nabla, images);
}

/// nabla ring polynomial -> Taylor form over (u - a)^e, reduced.
TForm nabla_to_taylor(const QMPoly& p, const TaylorContext& ctx, const std::vector<std::string>& unknowns,
                      const std::map<std::string, std::string>& rename) {
  const VarTable& yv = p.vars();
  const RingPtr& R = ctx.ring;
  // variable -> (numerator image, denominator power)
  std::vector<QMPoly> img(yv.size());
  std::vector<unsigned> dpow(yv.size(), 0);
  for (std::size_t v = 0; v < yv.size(); ++v) {
    if (!p.involves(v)) continue;
    const std::string& name = yv.name(v);
    bool done = false;
    for (std::size_t i = 0; i < unknowns.size() && !done; ++i)
      for (unsigned j = 0; j <= ctx.k && !done; ++j)
        if (name == y_name_of(unknowns[i], j)) {
          img[v] = ctx.delta_num(i, j);
          dpow[v] = j;
          done = true;
        }
    if (!done) {
      auto it = rename.find(name);
      img[v] = var_of(R, it == rename.end() ? name : it->second);
    }
  }
  unsigned E = 0;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    for (std::size_t v = 0; v < yv.size(); ++v) d += dpow[v] * t.mono[v];
    E = std::max(E, d);
  }
  std::vector<std::vector<QMPoly>> powers(yv.size());
  auto power = [&](std::size_t v, unsigned e) -> const QMPoly& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(cst(R, BigRat(1)));
    while (pw.size() <= e) pw.push_back(pw.back() * img[v]);
    return pw[e];
  };
  std::vector<QMPoly> lin_pows{cst(R, BigRat(1))};
  while (lin_pows.size() <= E) lin_pows.push_back(lin_pows.back() * ctx.lin());
  std::vector<Term<BigRat>> acc;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    QMPoly prod = cst(R, t.coeff);
    for (std::size_t v = 0; v < yv.size(); ++v) {
      if (!t.mono[v]) continue;
      d += dpow[v] * t.mono[v];
      prod *= power(v, t.mono[v]);
    }
    prod *= lin_pows[E - d];
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  TForm r{QMPoly::from_terms(R, std::move(acc)), E};
  ctx.reduce(r);
  return r;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

// --------------------------------------------------------------- system

std::string DDESystem::y_name(std::size_t i, unsigned j) const { return y_name_of(unknowns.at(i), j); }

unsigned DDESystem::delta() const {
  int d = 0;
  for (const auto& p : f) d = std::max(d, p.total_degree());
  for (const auto& p : Q) d = std::max(d, p.total_degree());
  return static_cast<unsigned>(std::max(d, 1));
}

const Param* DDESystem::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

bool operator==(const DDESystem& a, const DDESystem& b) {
  if (a.unknowns != b.unknowns || a.catalytic != b.catalytic || a.point_name != b.point_name || !(a.a == b.a) ||
      a.k != b.k || !(a.params == b.params))
    return false;
  if (!a.ring || !b.ring || !(*a.ring == *b.ring)) return false;
  return a.f == b.f && a.Q == b.Q;
}

DDESystem parse_dde(const std::string& text) {
  Decls d = Parser(text).run();
  unsigned k = 0;
  for (const auto& e : d.equations) k = std::max(k, max_delta_order(*e.rhs));
  if (d.order) {
    if (*d.order < k)
      throw DslError("declared order " + std::to_string(*d.order) + " is below the order " + std::to_string(k) +
                         " used by the equations",
                     1, 1);
    k = *d.order;
  }
  const unsigned n = static_cast<unsigned>(d.unknowns.size());

  TaylorContext ctx;
  ctx.ring = make_ring(taylor_names(n, k, d.catalytic, d.params));
  ctx.u = d.catalytic;
  ctx.a = d.a;
  ctx.n = n;
  ctx.k = k;
  RingPtr nabla = nabla_ring(d.unknowns, k, d.catalytic, d.params);
  Evaluator ev(ctx, d);

  std::vector<QMPoly> Y(n);
  std::vector<std::pair<int, int>> where(n);
  QMPoly lin = var_of(nabla, d.catalytic) - cst(nabla, d.a);
  for (const auto& eq : d.equations) {
    TForm rhs = ev.eval(*eq.rhs);
    QMPoly num = taylor_to_nabla(rhs.num, nabla, d.unknowns, std::max(k, 1u), d.a, {});
    auto q = exact_divide(num, lin.pow(rhs.e));
    if (!q)
      throw DslError("right-hand side of " + d.unknowns[eq.unknown] +
                         " is not a polynomial in the unknowns and their discrete derivatives up to order " +
                         std::to_string(k),
                     eq.line, eq.col);
    Y[eq.unknown] = *q;
    where[eq.unknown] = {eq.line, eq.col};
  }

  // Unknowns occurring linearly at t^0 are replaced by their right-hand side.
  std::size_t tv = nabla->vars.index("t");
  auto y_vars_in = [&](const QMPoly& p) {
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned j = 0; j <= k; ++j) {
        std::size_t v = nabla->vars.index(y_name_of(d.unknowns[i], j));
        if (p.involves(v)) vs.push_back(v);
      }
    return vs;
  };
  for (unsigned round = 0; round <= n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      QMPoly y0 = Y[i].eval_var(tv, BigRat(0));
      auto vs = y_vars_in(y0);
      if (vs.empty()) continue;
      if (round == n)
        throw DslError("equation for " + d.unknowns[i] + " is not of the form F = f(u) + t*Q: the t^0 part depends on the unknowns",
                       where[i].first, where[i].second);
      QMPoly rest = Y[i] - y0;
      std::vector<std::pair<std::size_t, QMPoly>> subs;
      for (std::size_t v : vs) {
        std::size_t j = 0;
        bool plain = false;
        for (; j < n; ++j)
          if (nabla->vars.name(v) == y_name_of(d.unknowns[j], 0)) {
            plain = true;
            break;
          }
        bool linear = plain && j != i && y0.degree(v) == 1 && y_vars_in(y0.coeffs_in(v)[1]).empty();
        if (!linear)
          throw DslError("equation for " + d.unknowns[i] +
                             " is not of the form F = f(u) + t*Q: missing factor t in front of the unknowns",
                         where[i].first, where[i].second);
        subs.push_back({v, Y[j]});
      }
      Y[i] = y0.substitute_all(subs) + rest;
      changed = true;
    }
    if (!changed) break;
  }

  DDESystem sys;
  sys.unknowns = d.unknowns;
  sys.catalytic = d.catalytic;
  sys.point_name = d.point_name;
  sys.a = d.a;
  sys.k = k;
  sys.params = d.params;
  sys.ring = nabla;
  QMPoly t = var_of(nabla, "t");
  for (std::size_t i = 0; i < n; ++i) {
    QMPoly f0 = Y[i].eval_var(tv, BigRat(0));
    sys.f.push_back(f0);
    sys.Q.push_back(divide_or_throw(Y[i] - f0, t, "parse_dde"));
  }
  return sys;
}

std::string print_dde(const DDESystem& sys) {
  std::ostringstream out;
  out << "system {\n";
  out << "  unknowns " << join(sys.unknowns, ", ") << ";\n";
  out << "  catalytic " << sys.catalytic << ";\n";
  out << "  point " << sys.point_name << " = " << sys.a.to_string() << ";\n";
  out << "  order " << sys.k << ";\n";
  for (const auto& p : sys.params) {
    out << "  param " << p.name;
    if (p.value) out << " = " << p.value->to_string();
    out << ";\n";
  }
  for (std::size_t i = 0; i < sys.n(); ++i) {
    out << "  " << sys.unknowns[i] << " = ";
    if (sys.Q[i].is_zero()) {
      out << sys.f[i].to_string();
    } else {
      if (!sys.f[i].is_zero()) out << sys.f[i].to_string() << " + ";
      out << "t*(" << sys.Q[i].to_string() << ")";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

DDESystem bind_params(const DDESystem& sys, bool require_all) {
  DDESystem r = sys;
  for (const auto& p : sys.params) {
    std::size_t v = sys.ring->vars.index(p.name);
    if (!p.value) {
      if (require_all) {
        for (std::size_t i = 0; i < sys.n(); ++i)
          if (sys.f[i].involves(v) || sys.Q[i].involves(v)) throw UnboundParameter(p.name);
      }
      continue;
    }
    for (std::size_t i = 0; i < sys.n(); ++i) {
      r.f[i] = r.f[i].eval_var(v, *p.value);
      r.Q[i] = r.Q[i].eval_var(v, *p.value);
    }
  }
  return r;
}

DDESystem shift_to_origin(const DDESystem& sys) {
  if (sys.a.is_zero()) return sys;
  DDESystem r = sys;
  QMPoly shifted = var_of(sys.ring, sys.catalytic) + cst(sys.ring, sys.a);
  for (std::size_t i = 0; i < sys.n(); ++i) {
    r.f[i] = sys.f[i].substitute(sys.catalytic, shifted);
    r.Q[i] = sys.Q[i].substitute(sys.catalytic, shifted);
  }
  r.a = BigRat(0);
  return r;
}

NumeratorSystem normalize(const DDESystem& input, NormalizeMode mode) {
  DDESystem sys = bind_params(input, false);
  NumeratorSystem ns;
  ns.original_a = sys.a;
  if (mode == NormalizeMode::deformation_ready && !sys.a.is_zero()) {
    sys = shift_to_origin(sys);
    ns.a_shifted = true;
  }
  const unsigned n = static_cast<unsigned>(sys.n());
  ns.n = n;
  ns.k = sys.k;
  ns.a = sys.a;
  std::vector<Param> unbound;
  for (const auto& p : sys.params)
    if (!p.value) unbound.push_back(p);
  TaylorContext ctx;
  ctx.ring = make_ring(taylor_names(n, sys.k, "u", unbound));
  ctx.u = "u";
  ctx.a = sys.a;
  ctx.n = n;
  ctx.k = sys.k;
  ns.ring = ctx.ring;
  std::map<std::string, std::string> rename{{sys.catalytic, "u"}};
  QMPoly t = var_of(sys.ring, "t");
  for (unsigned i = 0; i < n; ++i) {
    QMPoly Y = sys.f[i] + t * sys.Q[i];
    QMPoly Yb = Y;
    // drop parameters that were bound (they no longer occur)
    TForm tf = nabla_to_taylor(Yb, ctx, sys.unknowns, rename);
    unsigned m = tf.e;
    if (mode == NormalizeMode::deformation_ready) m = std::max(m, std::max(sys.k, 1u));
    QMPoly E = tf.num * ctx.lin_pow(m - tf.e) - ctx.lin_pow(m) * ctx.x(i);
    ns.E.push_back(E);
    ns.m.push_back(m);
    ns.M += m;
  }
  return ns;
}

std::string TaylorExpr::to_string() const {
  if (power == 0) return num.to_string();
  std::string base = a.is_zero() ? "u" : "(u - " + a.to_string() + ")";
  if (a.sign() < 0) base = "(u + " + (-a).to_string() + ")";
  std::string den = power == 1 ? base : base + "^" + std::to_string(power);
  return "(" + num.to_string() + ")/" + den;
}

TaylorExpr expand_delta(const RingPtr& ring, unsigned i, unsigned j, unsigned k, const BigRat& a) {
  if (i == 0) throw std::invalid_argument("expand_delta: unknown index starts at 1");
  if (j > k) throw std::invalid_argument("expand_delta: order " + std::to_string(j) + " exceeds k = " + std::to_string(k));
  TaylorContext ctx;
  ctx.ring = ring;
  ctx.u = "u";
  ctx.a = a;
  ctx.k = k;
  return TaylorExpr{ctx.delta_num(i - 1, j), j, a};
}

std::pair<DDESystem, DeformationParams> deform(const DDESystem& input, const std::optional<BigRat>& epsilon) {
  if (epsilon && epsilon->is_zero()) throw std::invalid_argument("deform: epsilon must be non-zero");
  if (input.k == 0) throw std::invalid_argument("deform: the system has no discrete derivative (k = 0)");
  if (input.find_param("eps")) throw std::invalid_argument("deform: parameter name 'eps' is reserved");
  NumeratorSystem ns = normalize(input, NormalizeMode::deformation_ready);
  const unsigned n = static_cast<unsigned>(input.n()), k = input.k;
  DeformationParams dp;
  dp.M = ns.M;
  dp.beta = 2 * ns.M / k;
  dp.alpha = n * n * k * (dp.beta + 1) + n * ns.M;
  dp.epsilon = epsilon;

  DDESystem base = shift_to_origin(bind_params(input, false));
  DDESystem out = base;
  out.params.push_back(Param{"eps", epsilon});
  std::vector<std::string> names = base.ring->vars.names();
  names.push_back("eps");
  out.ring = make_ring(names);
  QMPoly t = var_of(out.ring, "t");
  QMPoly eps_k = var_of(out.ring, "eps").pow(k);
  QMPoly t_alpha = t.pow(dp.alpha);
  QMPoly t_beta = t.pow(dp.beta);
  dp.gamma.assign(n, std::vector<std::string>(n));
  for (unsigned i = 0; i < n; ++i) {
    QMPoly f = base.f[i].to_ring(out.ring);
    QMPoly q = base.Q[i].to_ring(out.ring).substitute("t", t_alpha);
    QMPoly added(out.ring);
    for (unsigned j = 0; j < n; ++j) {
      QMPoly gamma = i == j ? cst(out.ring, pow(BigRat(static_cast<long>(i + 1)), k)) : t_beta;
      dp.gamma[i][j] = gamma.to_string();
      added += gamma * var_of(out.ring, out.y_name(j, k));
    }
    out.f[i] = f;
    out.Q[i] = t.pow(dp.alpha - 1) * q + eps_k * added;
  }
  return {out, dp};
}

}  // namespace catsolve
