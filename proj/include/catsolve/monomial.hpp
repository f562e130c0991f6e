#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace catsolve {

inline constexpr std::size_t kMaxVars = 24;

/// Ordered, immutable list of variable names.
class VarTable {
public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  /// Like find() but throws std::invalid_argument for unknown names.
  std::size_t index(const std::string& name) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

/// Exponent vector; entries past the ring's variable count stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  void set(std::size_t i, std::uint16_t v) {
    deg = deg - e[i] + v;
    e[i] = v;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.e == b.e; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
  }

  bool divides(const Monomial& b) const {
    if (deg > b.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }

  /// b / a, assuming a divides b.
  friend Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
    r.deg = b.deg - a.deg;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
      d += r.e[i];
    }
    r.deg = d;
    return r;
  }

  bool coprime(const Monomial& b) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] != 0 && b.e[i] != 0) return false;
    return true;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = m.deg;
    for (auto v : m.e) h = h * 1000003u ^ v;
    return h;
  }
};

/// Monomial orders: lex, degrevlex, and block orders built from them.
/// Variables are compared in VarTable order (index 0 is largest).
class MonomialOrder {
public:
  enum class Kind { lex, degrevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex); }
  static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex); }
  /// block_of[v] gives the block index of variable v; blocks are compared
  /// in increasing index order, each with its own sub-order. Earlier
  /// blocks are strictly greater (elimination order).
  static MonomialOrder block(std::vector<int> block_of, std::vector<Kind> sub_orders);

  Kind kind() const { return kind_; }
  const std::vector<int>& block_of() const { return block_of_; }
  const std::vector<Kind>& sub_orders() const { return sub_; }

  /// Negative, zero or positive like a three-way comparison.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    if (kind_ == Kind::degrevlex) {
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (std::size_t i = nvars; i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
      return 0;
    }
    if (kind_ == Kind::lex) {
      for (std::size_t i = 0; i < nvars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    }
    return compare_blocks(a, b, nvars);
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_of_ == b.block_of_ && a.sub_ == b.sub_;
  }

  std::string describe() const;

private:
  int compare_blocks(const Monomial& a, const Monomial& b, std::size_t nvars) const;

  explicit MonomialOrder(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<int> block_of_;
  std::vector<Kind> sub_;
};

/// Variable table plus the active monomial order.
struct PolyRing {
  VarTable vars;
  MonomialOrder order = MonomialOrder::degrevlex();

  std::size_t nvars() const { return vars.size(); }
  friend bool operator==(const PolyRing& a, const PolyRing& b) { return a.vars == b.vars && a.order == b.order; }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> names, MonomialOrder order = MonomialOrder::degrevlex());
/// Same variables, different order.
RingPtr with_order(const RingPtr& ring, MonomialOrder order);
/// Elimination order: the listed variables form a greater degrevlex block,
/// the remaining ones a smaller degrevlex block.
MonomialOrder elimination_order(const VarTable& vars, const std::vector<std::string>& eliminate);

std::string monomial_to_string(const Monomial& m, const VarTable& vars);

}  // namespace catsolve
