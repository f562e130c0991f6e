#include "catsolve/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace catsolve {

namespace {

/// (p(u) - p(a)) / (u - a) by synthetic division.
QPoly divided_difference(const QPoly& p, const BigRat& a) {
  int d = p.degree();
  if (d <= 0) return QPoly();
  std::vector<BigRat> q(static_cast<std::size_t>(d));
  BigRat acc;
  for (int i = d; i >= 1; --i) {
    acc = acc * a + p.coeff(static_cast<std::size_t>(i));
    q[static_cast<std::size_t>(i - 1)] = acc;
  }
  return QPoly(std::move(q));
}

}  // namespace

// ----------------------------------------------------------- bivariate

TruncBiSeries TruncBiSeries::constant(const QPoly& p, std::size_t order) {
  TruncBiSeries s(order);
  if (order > 0) s.c_[0] = p;
  return s;
}

bool TruncBiSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const QPoly& p) { return p.is_zero(); });
}

TruncBiSeries TruncBiSeries::truncated(std::size_t order) const {
  TruncBiSeries r(std::min(order, c_.size()));
  std::copy(c_.begin(), c_.begin() + static_cast<long>(r.order()), r.c_.begin());
  return r;
}

TruncBiSeries& TruncBiSeries::operator+=(const TruncBiSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

TruncBiSeries& TruncBiSeries::operator-=(const TruncBiSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

TruncBiSeries operator*(const TruncBiSeries& a, const TruncBiSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  TruncBiSeries r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

TruncBiSeries TruncBiSeries::scaled(const BigRat& c) const {
  TruncBiSeries r = *this;
  for (auto& p : r.c_) p = p.scaled(c);
  return r;
}

TruncBiSeries TruncBiSeries::mul_poly(const QPoly& p) const {
  TruncBiSeries r = *this;
  for (auto& q : r.c_) q = q * p;
  return r;
}

TruncBiSeries TruncBiSeries::shifted(std::size_t s, std::size_t e) const {
  TruncBiSeries r(order());
  for (std::size_t j = 0; j + s < order(); ++j) r.c_[j + s] = e ? c_[j].shifted(e) : c_[j];
  return r;
}

TruncBiSeries TruncBiSeries::delta(const BigRat& a) const {
  TruncBiSeries r(order());
  for (std::size_t j = 0; j < order(); ++j) r.c_[j] = divided_difference(c_[j], a);
  return r;
}

TruncBiSeries TruncBiSeries::translate_u(const BigRat& a) const {
  TruncBiSeries r(order());
  QPoly shift(std::vector<BigRat>{a, BigRat(1)});
  for (std::size_t j = 0; j < order(); ++j) r.c_[j] = c_[j].compose(shift);
  return r;
}

bool operator==(const TruncBiSeries& a, const TruncBiSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  for (std::size_t j = 0; j < n; ++j)
    if (!(a.c_[j] == b.c_[j])) return false;
  return true;
}

std::string TruncBiSeries::to_string(const std::string& u) const {
  std::string s;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    std::string cs = c_[j].to_string(u);
    auto nz = std::count_if(c_[j].coeffs().begin(), c_[j].coeffs().end(), [](const BigRat& x) { return !x.is_zero(); });
    bool compound = nz > 1 || cs[0] == '-';
    std::string tp = j == 0 ? "" : (j == 1 ? "t" : "t^" + std::to_string(j));
    std::string term;
    if (j == 0) term = cs;
    else if (cs == "1") term = tp;
    else term = (compound ? "(" + cs + ")" : cs) + "*" + tp;
    s += s.empty() ? term : " + " + term;
  }
  if (s.empty()) s = "0";
  return s + " + O(t^" + std::to_string(c_.size()) + ")";
}

// ---------------------------------------------------------- univariate

TruncTSeries::TruncTSeries(std::vector<BigRat> coeffs, unsigned ramification)
    : n_((coeffs.size() + ramification - 1) / ramification), d_(ramification), c_(std::move(coeffs)) {
  c_.resize(n_ * d_);
}

bool TruncTSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const BigRat& c) { return c.is_zero(); });
}

std::size_t TruncTSeries::valuation_index() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return i;
  return c_.size();
}

TruncTSeries TruncTSeries::truncated(std::size_t order) const {
  TruncTSeries r(std::min(order, n_), d_);
  std::copy(c_.begin(), c_.begin() + static_cast<long>(r.c_.size()), r.c_.begin());
  return r;
}

namespace {
void check_ram(const TruncTSeries& a, const TruncTSeries& b) {
  if (a.ramification() != b.ramification()) throw std::invalid_argument("TruncTSeries: ramification mismatch");
}
}  // namespace

TruncTSeries& TruncTSeries::operator+=(const TruncTSeries& o) {
  check_ram(*this, o);
  *this = truncated(std::min(n_, o.n_));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TruncTSeries& TruncTSeries::operator-=(const TruncTSeries& o) {
  check_ram(*this, o);
  *this = truncated(std::min(n_, o.n_));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TruncTSeries operator*(const TruncTSeries& a, const TruncTSeries& b) {
  check_ram(a, b);
  TruncTSeries r(std::min(a.n_, b.n_), a.d_);
  std::size_t len = r.c_.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len; ++j)
      if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

TruncTSeries TruncTSeries::scaled(const BigRat& c) const {
  TruncTSeries r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

bool operator==(const TruncTSeries& a, const TruncTSeries& b) {
  if (a.d_ != b.d_) return false;
  std::size_t len = std::min(a.c_.size(), b.c_.size());
  for (std::size_t i = 0; i < len; ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

TruncBiSeries TruncTSeries::to_bi() const {
  if (d_ != 1) throw std::invalid_argument("TruncTSeries::to_bi: ramified series");
  TruncBiSeries r(n_);
  for (std::size_t j = 0; j < n_; ++j) r.coeff(j) = QPoly(c_[j]);
  return r;
}

std::string TruncTSeries::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string tp;
    if (i > 0) {
      if (d_ == 1) tp = i == 1 ? "t" : "t^" + std::to_string(i);
      else tp = "t^(" + BigRat(BigInt(static_cast<unsigned long>(i)), BigInt(d_)).to_string() + ")";
    }
    BigRat c = c_[i];
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    std::string term = tp.empty() ? c.to_string() : (c.is_one() ? tp : c.to_string() + "*" + tp);
    if (s.empty()) s = neg ? "-" + term : term;
    else s += (neg ? " - " : " + ") + term;
  }
  if (s.empty()) s = "0";
  return s + " + O(t^" + std::to_string(n_) + ")";
}

TruncTSeries specialize(const TruncBiSeries& s, const BigRat& a, unsigned j) {
  TruncTSeries r(s.order());
  for (std::size_t i = 0; i < s.order(); ++i) {
    QPoly p = s.coeff(i);
    for (unsigned d = 0; d < j; ++d) p = p.derivative();
    r.coeff(i) = p.eval(a);
  }
  return r;
}

QPoly to_upoly(const QMPoly& p, const std::string& u) {
  std::size_t uv = p.vars().index(u);
  QPoly r;
  for (const auto& t : p.terms()) {
    if (t.mono.deg != t.mono[uv]) throw std::invalid_argument("to_upoly: polynomial involves more than " + u);
    r += QPoly::monomial(t.coeff, t.mono[uv]);
  }
  return r;
}

namespace {

TruncBiSeries eval_impl(const QMPoly& p, const std::vector<const TruncBiSeries*>& images, std::size_t N,
                        std::size_t tv, std::size_t uv) {
  const std::size_t nv = p.nvars();
  std::vector<std::vector<TruncBiSeries>> powers(nv);
  auto power = [&](std::size_t v, unsigned e) -> const TruncBiSeries& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(images[v]->truncated(N));
    while (pw.size() < e) pw.push_back(pw.back() * pw[0]);
    return pw[e - 1];
  };
  TruncBiSeries acc(N);
  for (const auto& t : p.terms()) {
    std::size_t te = tv < nv ? t.mono[tv] : 0;
    if (te >= N) continue;
    std::size_t ue = uv < nv ? t.mono[uv] : 0;
    TruncBiSeries prod;
    bool have = false;
    for (std::size_t v = 0; v < nv; ++v) {
      if (v == tv || v == uv || t.mono[v] == 0) continue;
      if (images[v] == nullptr) throw std::invalid_argument("eval_at_series: unbound variable '" + p.vars().name(v) + "'");
      const TruncBiSeries& pw = power(v, t.mono[v]);
      prod = have ? prod * pw : pw.truncated(N - te);
      have = true;
    }
    if (!have) prod = TruncBiSeries::constant(QPoly(BigRat(1)), N);
    prod = prod.truncated(N - te);
    TruncBiSeries full(N);
    for (std::size_t j = 0; j < prod.order(); ++j)
      if (!prod.coeff(j).is_zero()) full.coeff(j + te) = prod.coeff(j).shifted(ue).scaled(t.coeff);
    acc += full;
  }
  return acc;
}

}  // namespace

TruncBiSeries eval_at_series(const QMPoly& p, const std::map<std::string, TruncBiSeries>& bind, std::size_t N,
                             const std::string& t, const std::string& u) {
  std::size_t nv = p.nvars();
  std::vector<const TruncBiSeries*> images(nv, nullptr);
  for (std::size_t v = 0; v < nv; ++v) {
    auto it = bind.find(p.vars().name(v));
    if (it != bind.end()) {
      if (it->second.order() < N) throw std::invalid_argument("eval_at_series: binding for '" + it->first + "' is too short");
      images[v] = &it->second;
    }
  }
  std::size_t tv = p.vars().find(t).value_or(nv);
  std::size_t uv = p.vars().find(u).value_or(nv);
  if (tv < nv && images[tv]) tv = nv;
  if (uv < nv && images[uv]) uv = nv;
  return eval_impl(p, images, N, tv, uv);
}

TruncBiSeries eval_at_series(const QMPoly& p, const std::map<std::string, TruncTSeries>& bind, std::size_t N,
                             const std::string& t, const std::string& u) {
  std::map<std::string, TruncBiSeries> bi;
  for (const auto& [k, v] : bind) bi.emplace(k, v.to_bi());
  return eval_at_series(p, bi, N, t, u);
}

// ------------------------------------------------------ fixed point

namespace {

struct NablaIndex {
  std::vector<std::vector<std::size_t>> y;  // y[i][j] = ring index of D^j[F_i]
};

NablaIndex nabla_index(const DDESystem& sys) {
  NablaIndex idx;
  idx.y.resize(sys.n());
  for (std::size_t i = 0; i < sys.n(); ++i)
    for (unsigned j = 0; j <= sys.k; ++j) idx.y[i].push_back(sys.ring->vars.index(sys.y_name(i, j)));
  return idx;
}

DDESystem require_bound(const DDESystem& sys) { return bind_params(sys, true); }

std::vector<TruncBiSeries> nabla_of(const TruncBiSeries& F, unsigned k, const BigRat& a) {
  std::vector<TruncBiSeries> out{F};
  for (unsigned j = 1; j <= k; ++j) out.push_back(out.back().delta(a));
  return out;
}

/// f_i + t Q_i(nabla) modulo t^N, where Q_i is needed modulo t^(N-1).
TruncBiSeries step_one(const DDESystem& sys, const NablaIndex& idx, std::size_t i,
                       const std::vector<std::vector<TruncBiSeries>>& nab, std::size_t N) {
  std::size_t tv = sys.ring->vars.index("t");
  std::size_t uv = sys.ring->vars.index(sys.catalytic);
  std::size_t nv = sys.ring->nvars();
  TruncBiSeries r = TruncBiSeries::constant(to_upoly(sys.f[i], sys.catalytic), N);
  if (N <= 1) return r;
  std::vector<const TruncBiSeries*> images(nv, nullptr);
  for (std::size_t a = 0; a < sys.n(); ++a)
    for (unsigned j = 0; j <= sys.k; ++j) images[idx.y[a][j]] = &nab[a][j];
  TruncBiSeries q = eval_impl(sys.Q[i], images, N - 1, tv, uv);
  for (std::size_t j = 0; j + 1 < N; ++j) r.coeff(j + 1) += q.coeff(j);
  return r;
}

}  // namespace

std::vector<TruncBiSeries> fixed_point_step(const DDESystem& input, const std::vector<TruncBiSeries>& F,
                                            std::size_t N, Schedule schedule) {
  DDESystem sys = require_bound(input);
  if (F.size() != sys.n()) throw std::invalid_argument("fixed_point_step: one series per unknown required");
  NablaIndex idx = nabla_index(sys);
  std::vector<std::vector<TruncBiSeries>> nab;
  for (const auto& s : F) {
    if (s.order() < N) throw std::invalid_argument("fixed_point_step: input series too short");
    nab.push_back(nabla_of(s.truncated(N), sys.k, sys.a));
  }
  std::vector<TruncBiSeries> out(sys.n());
  for (std::size_t i = 0; i < sys.n(); ++i) {
    out[i] = step_one(sys, idx, i, nab, N);
    if (schedule == Schedule::gauss_seidel) nab[i] = nabla_of(out[i], sys.k, sys.a);
  }
  return out;
}

namespace {

/// Coefficient-by-coefficient evaluation of the right-hand sides: every
/// product in Q is a node whose coefficient j only needs coefficients
/// 0..j of its two factors.
class OnlineSolver {
public:
  OnlineSolver(const DDESystem& sys, std::size_t N) : sys_(sys), N_(N) {
    NablaIndex idx = nabla_index(sys);
    std::size_t nv = sys.ring->nvars();
    leaf_of_var_.assign(nv, -1);
    for (std::size_t a = 0; a < sys.n(); ++a)
      for (unsigned l = 0; l <= sys.k; ++l) {
        leaf_of_var_[idx.y[a][l]] = static_cast<int>(nodes_.size());
        nodes_.push_back({-1, -1, a, l, {}});
      }
    std::size_t tv = sys.ring->vars.index("t");
    std::size_t uv = sys.ring->vars.index(sys.catalytic);
    for (std::size_t i = 0; i < sys.n(); ++i) {
      std::vector<TermRef> refs;
      for (const auto& t : sys.Q[i].terms()) {
        int node = -1;
        for (std::size_t v = 0; v < nv; ++v) {
          if (v == tv || v == uv || t.mono[v] == 0) continue;
          if (leaf_of_var_[v] < 0) throw UnboundParameter(sys.ring->vars.name(v));
          int pw = power(leaf_of_var_[v], t.mono[v]);
          node = node < 0 ? pw : product(node, pw);
        }
        refs.push_back({t.coeff, t.mono[tv], t.mono[uv], node});
      }
      terms_.push_back(std::move(refs));
    }
  }

  std::vector<TruncBiSeries> run() {
    std::vector<TruncBiSeries> F(sys_.n(), TruncBiSeries(N_));
    for (std::size_t i = 0; i < sys_.n(); ++i) F[i].coeff(0) = to_upoly(sys_.f[i], sys_.catalytic);
    for (auto& nd : nodes_) nd.c.reserve(N_);
    for (std::size_t j = 0; j + 1 < N_; ++j) {
      for (auto& nd : nodes_) {
        if (nd.left < 0) {
          QPoly p = F[nd.unknown].coeff(j);
          for (unsigned l = 0; l < nd.order; ++l) p = divided_difference(p, sys_.a);
          nd.c.push_back(std::move(p));
        } else {
          const auto& L = nodes_[static_cast<std::size_t>(nd.left)].c;
          const auto& R = nodes_[static_cast<std::size_t>(nd.right)].c;
          QPoly acc;
          for (std::size_t i = 0; i <= j; ++i)
            if (!L[i].is_zero() && !R[j - i].is_zero()) acc += L[i] * R[j - i];
          nd.c.push_back(std::move(acc));
        }
      }
      for (std::size_t i = 0; i < sys_.n(); ++i) {
        QPoly acc;
        for (const auto& tr : terms_[i]) {
          if (tr.te > j) continue;
          std::size_t at = j - tr.te;
          if (tr.node < 0) {
            if (at == 0) acc += QPoly::monomial(tr.coeff, tr.ue);
          } else {
            const QPoly& c = nodes_[static_cast<std::size_t>(tr.node)].c[at];
            if (!c.is_zero()) acc += c.shifted(tr.ue).scaled(tr.coeff);
          }
        }
        F[i].coeff(j + 1) = std::move(acc);
      }
    }
    return F;
  }

private:
  struct Node {
    int left, right;
    std::size_t unknown;
    unsigned order;
    std::vector<QPoly> c;
  };
  struct TermRef {
    BigRat coeff;
    std::size_t te, ue;
    int node;
  };

  int product(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    nodes_.push_back({a, b, 0, 0, {}});
    int id = static_cast<int>(nodes_.size()) - 1;
    products_[key] = id;
    return id;
  }

  int power(int leaf, unsigned e) {
    int node = leaf;
    for (unsigned i = 1; i < e; ++i) node = product(node, leaf);
    return node;
  }

  const DDESystem& sys_;
  std::size_t N_;
  std::vector<int> leaf_of_var_;
  std::vector<Node> nodes_;
  std::vector<std::vector<TermRef>> terms_;
  std::map<std::pair<int, int>, int> products_;
};

}  // namespace

std::vector<TruncBiSeries> solve_series(const DDESystem& input, std::size_t N, Schedule schedule) {
  if (N == 0) throw std::invalid_argument("solve_series: order must be positive");
  DDESystem sys = require_bound(input);
  if (schedule == Schedule::online) return OnlineSolver(sys, N).run();
  NablaIndex idx = nabla_index(sys);
  std::vector<TruncBiSeries> F;
  for (std::size_t i = 0; i < sys.n(); ++i)
    F.push_back(TruncBiSeries::constant(to_upoly(sys.f[i], sys.catalytic), N));
  for (std::size_t prec = 2; prec <= N; ++prec) {
    std::vector<std::vector<TruncBiSeries>> nab;
    for (const auto& s : F) nab.push_back(nabla_of(s.truncated(prec), sys.k, sys.a));
    std::vector<TruncBiSeries> next(sys.n());
    for (std::size_t i = 0; i < sys.n(); ++i) {
      next[i] = step_one(sys, idx, i, nab, prec);
      if (schedule == Schedule::gauss_seidel) nab[i] = nabla_of(next[i], sys.k, sys.a);
    }
    for (std::size_t i = 0; i < sys.n(); ++i) {
      TruncBiSeries full(N);
      for (std::size_t j = 0; j < prec; ++j) full.coeff(j) = next[i].coeff(j);
      F[i] = std::move(full);
    }
  }
  return F;
}

std::vector<TruncBiSeries> residuals(const DDESystem& sys, const std::vector<TruncBiSeries>& F, std::size_t N) {
  auto step = fixed_point_step(sys, F, N);
  std::vector<TruncBiSeries> out;
  for (std::size_t i = 0; i < F.size(); ++i) out.push_back(F[i].truncated(N) - step[i]);
  return out;
}

std::map<std::string, TruncBiSeries> numerator_bindings(const NumeratorSystem& ns,
                                                        const std::vector<TruncBiSeries>& F) {
  std::map<std::string, TruncBiSeries> bind;
  BigRat shift = ns.a_shifted ? ns.original_a : BigRat(0);
  for (std::size_t i = 0; i < ns.n; ++i) {
    TruncBiSeries G = ns.a_shifted ? F[i].translate_u(shift) : F[i];
    bind[ns.x_name(i)] = G;
    for (unsigned l = 0; l < ns.k; ++l)
      bind[ns.z_name(ns.k * i + l)] = specialize(G, ns.a, l).to_bi();
  }
  return bind;
}

}  // namespace catsolve
