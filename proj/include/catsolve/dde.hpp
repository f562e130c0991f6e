#pragma once

// DDE systems: the DSL reader and printer, numerator normalization
// (clearing powers of (u - a)), the Taylor-coordinate expansion of the
// discrete derivatives and the deformation of the system.

#include "catsolve/bigrat.hpp"
#include "catsolve/mpoly.hpp"
#include "catsolve/polyparse.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace catsolve {

/// Parse or shape error in a DSL source, with a 1-based location.
class DslError : public std::runtime_error {
public:
  DslError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

private:
  int line_, col_;
};

/// Thrown when a computation needs a parameter value that was not given.
class UnboundParameter : public std::runtime_error {
public:
  explicit UnboundParameter(const std::string& name)
      : std::runtime_error("unbound parameter " + name), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

struct Param {
  std::string name;
  std::optional<BigRat> value;
  friend bool operator==(const Param&, const Param&) = default;
};

/// F_i = f_i(u) + t * Q_i(nabla^k F, t, u), i = 1..n, with
/// nabla^k F_i = (F_i, D[F_i], ..., D^k[F_i]) and D the divided difference
/// at u = a. f and Q live in `ring`, whose variables are the nabla
/// coordinates (named "F1", "D[F1]", "D^2[F1]", ...), t, the catalytic
/// variable and the parameters.
struct DDESystem {
  std::vector<std::string> unknowns;
  std::string catalytic = "u";
  std::string point_name = "a";
  BigRat a;
  unsigned k = 1;
  std::vector<Param> params;
  RingPtr ring;
  std::vector<QMPoly> f;
  std::vector<QMPoly> Q;

  std::size_t n() const { return unknowns.size(); }
  /// Name of the ring variable standing for D^j[F_i] (i is 0-based).
  std::string y_name(std::size_t i, unsigned j) const;
  /// max of the total degrees of the f_i and Q_i.
  unsigned delta() const;
  const Param* find_param(const std::string& name) const;

  friend bool operator==(const DDESystem& a, const DDESystem& b);
};

DDESystem parse_dde(const std::string& text);
std::string print_dde(const DDESystem& sys);

/// Substitutes every bound parameter value into f and Q. With
/// require_all, a parameter without value that still occurs raises
/// UnboundParameter.
DDESystem bind_params(const DDESystem& sys, bool require_all);

/// Translates u -> u + a so that the evaluation point becomes 0.
DDESystem shift_to_origin(const DDESystem& sys);

enum class NormalizeMode { minimal, deformation_ready };

/// E_i = (u - a)^{m_i} (f_i - x_i + t Q_i) written in x_1..x_n,
/// z_0..z_{nk-1}, t, u (and unbound parameters), where z_{k(i-1)+l}
/// stands for the l-th u-derivative of F_i at u = a.
struct NumeratorSystem {
  RingPtr ring;
  std::vector<QMPoly> E;
  std::vector<unsigned> m;
  unsigned M = 0;
  unsigned n = 0;
  unsigned k = 0;
  BigRat a;         // evaluation point in the coordinates of E
  BigRat original_a;
  bool a_shifted = false;

  std::string x_name(std::size_t i) const { return "x" + std::to_string(i + 1); }
  std::string z_name(std::size_t j) const { return "z" + std::to_string(j); }
};

NumeratorSystem normalize(const DDESystem& sys, NormalizeMode mode);

/// A polynomial over a power of (u - a).
struct TaylorExpr {
  QMPoly num;
  unsigned power = 0;
  BigRat a;
  std::string to_string() const;
};

/// Y_{i,j} = (x_i - sum_{l<j} (u-a)^l / l! z_{k(i-1)+l}) / (u-a)^j in the
/// ring `ring` (which must contain the x, z and u variables). i is 1-based.
TaylorExpr expand_delta(const RingPtr& ring, unsigned i, unsigned j, unsigned k, const BigRat& a);

struct DeformationParams {
  unsigned alpha = 0;
  unsigned beta = 0;
  unsigned M = 0;
  /// gamma[i][j] as a polynomial in t: i^k on the diagonal, t^beta elsewhere.
  std::vector<std::vector<std::string>> gamma;
  std::optional<BigRat> epsilon;
};

/// G_i = f_i + t^alpha Q_i(nabla^k G, t^alpha, u) + t eps^k sum_j gamma_ij D^k[G_j]
/// after translating u so that a = 0. A symbolic epsilon (nullopt) becomes
/// the unbound parameter "eps".
std::pair<DDESystem, DeformationParams> deform(const DDESystem& sys, const std::optional<BigRat>& epsilon);

}  // namespace catsolve
