#include "catsolve/monomial.hpp"

#include <set>
#include <stdexcept>

namespace catsolve {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars)
    throw std::invalid_argument("VarTable: at most " + std::to_string(kMaxVars) + " variables supported");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("VarTable: empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("VarTable: duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VarTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VarTable::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
  return *i;
}

MonomialOrder MonomialOrder::block(std::vector<int> block_of, std::vector<Kind> sub_orders) {
  for (int b : block_of)
    if (b < 0 || static_cast<std::size_t>(b) >= sub_orders.size())
      throw std::invalid_argument("MonomialOrder: block index out of range");
  for (auto k : sub_orders)
    if (k == Kind::block) throw std::invalid_argument("MonomialOrder: nested block orders are not supported");
  MonomialOrder o(Kind::block);
  o.block_of_ = std::move(block_of);
  o.sub_ = std::move(sub_orders);
  return o;
}

int MonomialOrder::compare_blocks(const Monomial& a, const Monomial& b, std::size_t nvars) const {
  for (std::size_t blk = 0; blk < sub_.size(); ++blk) {
    if (sub_[blk] == Kind::degrevlex) {
      std::uint32_t da = 0, db = 0;
      for (std::size_t i = 0; i < nvars; ++i)
        if (block_of_[i] == static_cast<int>(blk)) {
          da += a.e[i];
          db += b.e[i];
        }
      if (da != db) return da > db ? 1 : -1;
      for (std::size_t i = nvars; i-- > 0;)
        if (block_of_[i] == static_cast<int>(blk) && a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    } else {
      for (std::size_t i = 0; i < nvars; ++i)
        if (block_of_[i] == static_cast<int>(blk) && a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::lex:
      return "lex";
    case Kind::degrevlex:
      return "degrevlex";
    case Kind::block:
      break;
  }
  std::string s = "block(";
  for (std::size_t i = 0; i < sub_.size(); ++i) {
    if (i) s += ",";
    s += sub_[i] == Kind::lex ? "lex" : "degrevlex";
  }
  return s + ")";
}

RingPtr make_ring(std::vector<std::string> names, MonomialOrder order) {
  auto r = std::make_shared<PolyRing>();
  r->vars = VarTable(std::move(names));
  if (order.kind() == MonomialOrder::Kind::block && order.block_of().size() != r->vars.size())
    throw std::invalid_argument("block order does not cover every variable");
  r->order = std::move(order);
  return r;
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  return make_ring(ring->vars.names(), std::move(order));
}

MonomialOrder elimination_order(const VarTable& vars, const std::vector<std::string>& eliminate) {
  std::vector<int> block_of(vars.size(), 1);
  for (const auto& n : eliminate) block_of[vars.index(n)] = 0;
  return MonomialOrder::block(std::move(block_of),
                              {MonomialOrder::Kind::degrevlex, MonomialOrder::Kind::degrevlex});
}

std::string monomial_to_string(const Monomial& m, const VarTable& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars.name(i);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace catsolve
