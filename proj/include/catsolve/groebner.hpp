#pragma once

// Buchberger's algorithm with the Gebauer-Moeller criteria and sugar-based
// normal selection, plus elimination, saturation and dimension tests built
// on top of it. Generic over the coefficient field.

#include "catsolve/mpoly.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace catsolve {

struct GbBudget {
  std::size_t max_pairs = 200000;
  unsigned max_degree = 400;
  double max_seconds = 600.0;
};

/// Structured resource-exhaustion error.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, std::string resource)
      : std::runtime_error(what), resource_(std::move(resource)) {}
  const std::string& resource() const { return resource_; }

private:
  std::string resource_;
};

enum class BasisStatus { raw, groebner };

template <class F>
struct Ideal {
  RingPtr ring;
  std::vector<MPoly<F>> gens;
  BasisStatus status = BasisStatus::raw;
};

struct GbStats {
  std::size_t pairs_processed = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_size = 0;
};

namespace gbdetail {

inline std::uint32_t support_mask(const Monomial& m, std::size_t nvars) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < nvars; ++i)
    if (m.e[i]) mask |= 1u << i;
  return mask;
}

template <class F>
struct Reducer {
  std::vector<const MPoly<F>*> polys;
  std::vector<std::uint32_t> masks;
  std::size_t nvars = 0;

  void add(const MPoly<F>* p) {
    polys.push_back(p);
    masks.push_back(support_mask(p->lm(), nvars));
  }

  const MPoly<F>* find(const Monomial& m) const {
    std::uint32_t mm = support_mask(m, nvars);
    for (std::size_t i = 0; i < polys.size(); ++i)
      if ((masks[i] & ~mm) == 0 && polys[i]->lm().divides(m)) return polys[i];
    return nullptr;
  }
};

/// Sum of polynomials kept in buckets of geometrically growing size, each
/// stored in ascending term order so the leading term sits at the back.
template <class F>
class GeoBucket {
public:
  GeoBucket(const MonomialOrder& order, std::size_t nvars) : order_(order), nvars_(nvars) {}

  /// Adds c*m*(terms[from..]) where terms are in descending order.
  void add_scaled(const std::vector<Term<F>>& terms, std::size_t from, const Monomial& m, const F& c) {
    std::vector<Term<F>> v;
    v.reserve(terms.size() - from);
    for (std::size_t i = terms.size(); i-- > from;) v.push_back({terms[i].mono * m, terms[i].coeff * c});
    insert(std::move(v));
  }

  /// Removes and returns the leading term; false when the sum is zero.
  bool pop_lead(Term<F>& out) {
    while (true) {
      int best = -1;
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (b_[i].empty()) continue;
        if (best < 0 || order_.compare(b_[i].back().mono, b_[static_cast<std::size_t>(best)].back().mono, nvars_) > 0)
          best = static_cast<int>(i);
      }
      if (best < 0) return false;
      Term<F> lead = std::move(b_[static_cast<std::size_t>(best)].back());
      b_[static_cast<std::size_t>(best)].pop_back();
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (static_cast<int>(i) == best || b_[i].empty()) continue;
        if (b_[i].back().mono == lead.mono) {
          lead.coeff += b_[i].back().coeff;
          b_[i].pop_back();
        }
      }
      if (!lead.coeff.is_zero()) {
        out = std::move(lead);
        return true;
      }
    }
  }

private:
  void insert(std::vector<Term<F>> v) {
    std::size_t level = 0;
    while (capacity(level) < v.size()) ++level;
    while (true) {
      if (b_.size() <= level) b_.resize(level + 1);
      v = merge(std::move(b_[level]), std::move(v));
      b_[level].clear();
      if (v.size() <= capacity(level)) {
        b_[level] = std::move(v);
        return;
      }
      ++level;
    }
  }

  static std::size_t capacity(std::size_t level) { return std::size_t{16} << (2 * level); }

  std::vector<Term<F>> merge(std::vector<Term<F>> a, std::vector<Term<F>> b) const {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Term<F>> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      int c = order_.compare(a[i].mono, b[j].mono, nvars_);
      if (c < 0) {
        r.push_back(std::move(a[i++]));
      } else if (c > 0) {
        r.push_back(std::move(b[j++]));
      } else {
        a[i].coeff += b[j].coeff;
        if (!a[i].coeff.is_zero()) r.push_back(std::move(a[i]));
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) r.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) r.push_back(std::move(b[j]));
    return r;
  }

  const MonomialOrder& order_;
  std::size_t nvars_;
  std::vector<std::vector<Term<F>>> b_;
};

/// Full normal form of h modulo the reducer set.
template <class F>
MPoly<F> normal_form(const MPoly<F>& h, const Reducer<F>& red) {
  const RingPtr& ring = h.ring();
  if (h.is_zero()) return h;
  GeoBucket<F> bucket(ring->order, ring->nvars());
  F one = h.one_like();
  bucket.add_scaled(h.terms(), 0, Monomial{}, one);
  std::vector<Term<F>> done;
  Term<F> lead;
  while (bucket.pop_lead(lead)) {
    const MPoly<F>* g = red.find(lead.mono);
    if (g == nullptr) {
      done.push_back(std::move(lead));
      continue;
    }
    Monomial m = quotient(lead.mono, g->lm());
    F c = -(lead.coeff / g->lc());
    bucket.add_scaled(g->terms(), 1, m, c);
  }
  MPoly<F> r(ring);
  r.mutable_terms() = std::move(done);
  return r;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t sugar;
};

}  // namespace gbdetail

/// Reduces p modulo a list of polynomials (full reduction).
template <class F>
MPoly<F> reduce(const MPoly<F>& p, const std::vector<MPoly<F>>& basis) {
  gbdetail::Reducer<F> red;
  red.nvars = p.nvars();
  for (const auto& g : basis)
    if (!g.is_zero()) red.add(&g);
  return gbdetail::normal_form(p, red);
}

/// Reduced Groebner basis of the ideal generated by gens for the monomial
/// order of `ring` (inputs are moved into that ring by variable name).
template <class F>
Ideal<F> buchberger(const std::vector<MPoly<F>>& gens, const RingPtr& ring, const GbBudget& budget = {},
                    GbStats* stats = nullptr) {
  using gbdetail::Pair;
  const std::size_t nv = ring->nvars();
  const auto& order = ring->order;
  auto start = std::chrono::steady_clock::now();

  std::vector<MPoly<F>> G;
  std::vector<std::uint32_t> sugar;
  std::vector<bool> active;
  std::vector<Pair> B;

  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = order.compare(a.lcm, b.lcm, nv);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };

  auto update = [&](std::size_t h) {
    const Monomial& lh = G[h].lm();
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> C;
    for (std::size_t g = 0; g < h; ++g)
      if (active[g]) C.push_back({g, lcm(lh, G[g].lm()), lh.coprime(G[g].lm())});
    // chain criterion inside the new pairs
    for (std::size_t a = 0; a < C.size(); ++a) {
      if (C[a].coprime) continue;
      for (std::size_t b = 0; b < C.size(); ++b) {
        if (a == b || !C[b].keep) continue;
        if (C[b].lcm.divides(C[a].lcm) && !(C[b].lcm == C[a].lcm && b > a)) {
          C[a].keep = false;
          break;
        }
      }
    }
    // old pairs made redundant by h
    std::vector<Pair> kept;
    kept.reserve(B.size());
    for (const auto& p : B) {
      if (lh.divides(p.lcm) && !(lcm(G[p.i].lm(), lh) == p.lcm) && !(lcm(G[p.j].lm(), lh) == p.lcm)) continue;
      kept.push_back(p);
    }
    B = std::move(kept);
    // product criterion: coprime pairs are dropped, and they also suppress
    // other pairs sharing their lcm
    for (const auto& c : C) {
      if (!c.keep || c.coprime) continue;
      bool shadowed = false;
      for (const auto& d : C)
        if (d.coprime && d.keep && d.lcm == c.lcm) shadowed = true;
      if (shadowed) continue;
      std::uint32_t s = std::max(sugar[c.g] + (c.lcm.deg - G[c.g].lm().deg), sugar[h] + (c.lcm.deg - lh.deg));
      B.push_back({c.g, h, c.lcm, s});
    }
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && lh.divides(G[g].lm())) active[g] = false;
  };

  auto add_poly = [&](MPoly<F> p, std::uint32_t s) {
    p = p.monic();
    G.push_back(std::move(p));
    sugar.push_back(s);
    active.push_back(true);
    update(G.size() - 1);
  };

  auto reducer_from_active = [&]() {
    gbdetail::Reducer<F> red;
    red.nvars = nv;
    for (std::size_t g = 0; g < G.size(); ++g)
      if (active[g]) red.add(&G[g]);
    return red;
  };

  {
    std::vector<MPoly<F>> inputs;
    for (const auto& g : gens) {
      MPoly<F> p = g.to_ring(ring);
      if (!p.is_zero()) inputs.push_back(std::move(p));
    }
    std::sort(inputs.begin(), inputs.end(),
              [&](const MPoly<F>& a, const MPoly<F>& b) { return order.compare(a.lm(), b.lm(), nv) < 0; });
    for (auto& p : inputs) {
      auto red = reducer_from_active();
      MPoly<F> r = gbdetail::normal_form(p, red);
      if (!r.is_zero()) add_poly(std::move(r), static_cast<std::uint32_t>(r.total_degree()));
    }
  }

  std::size_t processed = 0, zeros = 0;
  while (!B.empty()) {
    auto it = std::min_element(B.begin(), B.end(), pair_less);
    Pair p = *it;
    B.erase(it);
    ++processed;
    if (processed > budget.max_pairs)
      throw BudgetExceeded("Groebner basis: pair budget exhausted (" + std::to_string(budget.max_pairs) + ")",
                           "pairs");
    if (p.lcm.deg > budget.max_degree)
      throw BudgetExceeded("Groebner basis: degree budget exhausted (" + std::to_string(budget.max_degree) + ")",
                           "degree");
    if ((processed & 15u) == 0) {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (secs > budget.max_seconds)
        throw BudgetExceeded("Groebner basis: time budget exhausted", "seconds");
    }
    const MPoly<F>& f = G[p.i];
    const MPoly<F>& g = G[p.j];
    F one = f.one_like();
    MPoly<F> s = f.mul_term(quotient(p.lcm, f.lm()), one) - g.mul_term(quotient(p.lcm, g.lm()), one);
    auto red = reducer_from_active();
    MPoly<F> r = gbdetail::normal_form(s, red);
    if (r.is_zero()) {
      ++zeros;
      continue;
    }
    add_poly(std::move(r), p.sugar);
  }

  // minimal, then fully inter-reduced basis
  std::vector<MPoly<F>> minimal;
  for (std::size_t g = 0; g < G.size(); ++g)
    if (active[g]) minimal.push_back(G[g]);
  std::sort(minimal.begin(), minimal.end(),
            [&](const MPoly<F>& a, const MPoly<F>& b) { return order.compare(a.lm(), b.lm(), nv) < 0; });
  std::vector<MPoly<F>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    gbdetail::Reducer<F> red;
    red.nvars = nv;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) red.add(&minimal[j]);
    MPoly<F> tail = minimal[i];
    Term<F> lead = tail.terms().front();
    tail.mutable_terms().erase(tail.mutable_terms().begin());
    MPoly<F> r = gbdetail::normal_form(tail, red);
    r += MPoly<F>::term(ring, lead.mono, lead.coeff);
    reduced.push_back(r.monic());
  }
  if (stats) {
    stats->pairs_processed = processed;
    stats->zero_reductions = zeros;
    stats->basis_size = reduced.size();
  }
  return Ideal<F>{ring, std::move(reduced), BasisStatus::groebner};
}

template <class F>
Ideal<F> groebner(const Ideal<F>& ideal, const GbBudget& budget = {}) {
  if (ideal.status == BasisStatus::groebner) return ideal;
  return buchberger(ideal.gens, ideal.ring, budget);
}

template <class F>
bool ideal_contains(const Ideal<F>& gb, const MPoly<F>& p) {
  if (gb.status != BasisStatus::groebner) throw std::invalid_argument("ideal_contains: basis is not Groebner");
  return reduce(p.to_ring(gb.ring), gb.gens).is_zero();
}

/// Generators of the elimination ideal I ∩ K[keep], read off a Groebner
/// basis for a block order with the eliminated variables in the greater
/// block. An empty result means the projection is positive-dimensional
/// (or the elimination ideal is zero).
template <class F>
std::vector<MPoly<F>> eliminate(const Ideal<F>& ideal, const std::vector<std::string>& keep,
                                const GbBudget& budget = {}) {
  const VarTable& vars = ideal.ring->vars;
  std::vector<std::string> drop;
  for (const auto& n : vars.names())
    if (std::find(keep.begin(), keep.end(), n) == keep.end()) drop.push_back(n);
  for (const auto& k : keep) vars.index(k);
  RingPtr elim = make_ring(vars.names(), elimination_order(vars, drop));
  Ideal<F> gb = buchberger(ideal.gens, elim, budget);
  std::vector<MPoly<F>> out;
  for (const auto& g : gb.gens) {
    bool only_kept = true;
    for (const auto& d : drop)
      if (g.involves(d)) only_kept = false;
    if (only_kept) out.push_back(g);
  }
  return out;
}

/// I : g^infinity via a fresh variable w, the generator w*g - 1 and
/// elimination of w. The result is a Groebner basis in the ring of I.
template <class F>
Ideal<F> saturate(const Ideal<F>& ideal, const MPoly<F>& g, const GbBudget& budget = {}) {
  if (g.is_zero()) throw std::invalid_argument("saturate: zero saturating polynomial");
  std::vector<std::string> names = ideal.ring->vars.names();
  std::string w = "_sat";
  while (ideal.ring->vars.find(w)) w += "_";
  names.insert(names.begin(), w);
  RingPtr ext = make_ring(names, elimination_order(VarTable(names), {w}));
  std::vector<MPoly<F>> gens;
  for (const auto& p : ideal.gens) gens.push_back(p.to_ring(ext));
  MPoly<F> gw = g.to_ring(ext);
  F one = gw.one_like();
  gens.push_back(MPoly<F>::var(ext, w, one) * gw - MPoly<F>::constant(ext, one));
  Ideal<F> gb = buchberger(gens, ext, budget);
  std::vector<MPoly<F>> kept;
  for (const auto& p : gb.gens)
    if (!p.involves(w)) kept.push_back(p.to_ring(ideal.ring));
  return buchberger(kept, ideal.ring, budget);
}

struct ZeroDimensional {
  std::size_t degree;
};
struct PositiveDimensional {
  std::vector<std::string> independent;
};
using DimensionResult = std::variant<ZeroDimensional, PositiveDimensional>;

/// Zero-dimensionality test on a Groebner basis: every listed variable must
/// have a pure power among the leading monomials. The degree is the number
/// of standard monomials; otherwise a maximal independent set is returned.
template <class F>
DimensionResult dimension_check(const Ideal<F>& gb, const std::vector<std::string>& vars_in) {
  if (gb.status != BasisStatus::groebner) throw std::invalid_argument("dimension_check: basis is not Groebner");
  const VarTable& vars = gb.ring->vars;
  std::vector<std::size_t> vs;
  for (const auto& n : vars_in) vs.push_back(vars.index(n));
  std::vector<Monomial> lms;
  for (const auto& g : gb.gens) lms.push_back(g.lm());
  for (const auto& m : lms)
    if (m.deg == 0) return ZeroDimensional{0};

  bool zero_dim = true;
  for (std::size_t v : vs) {
    bool found = false;
    for (const auto& m : lms)
      if (m.e[v] > 0 && m.e[v] == m.deg) found = true;
    if (!found) zero_dim = false;
  }
  if (!zero_dim) {
    // largest subset S of vs with no leading monomial supported on S
    std::size_t k = vs.size();
    std::uint64_t best = 0;
    int best_size = -1;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      int size = __builtin_popcountll(s);
      if (size <= best_size) continue;
      bool independent = true;
      for (const auto& m : lms) {
        bool inside = true;
        for (std::size_t i = 0; i < vars.size() && inside; ++i) {
          if (m.e[i] == 0) continue;
          auto pos = std::find(vs.begin(), vs.end(), i);
          if (pos == vs.end() || !((s >> (pos - vs.begin())) & 1u)) inside = false;
        }
        if (inside) {
          independent = false;
          break;
        }
      }
      if (independent) {
        best = s;
        best_size = size;
      }
    }
    PositiveDimensional pd;
    for (std::size_t i = 0; i < k; ++i)
      if ((best >> i) & 1u) pd.independent.push_back(vars.name(vs[i]));
    return pd;
  }

  // count standard monomials in the listed variables
  std::size_t count = 0;
  std::vector<Monomial> stack{Monomial{}};
  std::set<std::vector<std::uint16_t>> seen;
  while (!stack.empty()) {
    Monomial m = stack.back();
    stack.pop_back();
    std::vector<std::uint16_t> key(m.e.begin(), m.e.begin() + static_cast<long>(vars.size()));
    if (!seen.insert(key).second) continue;
    bool standard = true;
    for (const auto& l : lms)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    if (!standard) continue;
    ++count;
    for (std::size_t v : vs) {
      Monomial n = m;
      n.set(v, static_cast<std::uint16_t>(m.e[v] + 1));
      stack.push_back(n);
    }
  }
  return ZeroDimensional{count};
}

}  // namespace catsolve
