#pragma once

// The kernel method for systems of DDEs: Jacobian determinant Det and the
// column-replaced determinant P, the duplicated system, the genericity
// test, elimination down to the target z-variable and t, the scalar
// reduction by resultants, and the orchestration with deformation fallback.

#include "catsolve/dde.hpp"
#include "catsolve/fp.hpp"
#include "catsolve/groebner.hpp"
#include "catsolve/guess.hpp"
#include "catsolve/puiseux.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catsolve {

struct KernelSystem {
  NumeratorSystem base;
  QMPoly det;
  QMPoly p;
  std::vector<QMPoly> S;  // E_1..E_n, Det, P
};

/// det (d E_i / d x_j).
QMPoly build_det(const NumeratorSystem& ns);
/// The same determinant with the last column replaced by (d E_i / d u).
QMPoly build_p(const NumeratorSystem& ns);
KernelSystem build_kernel_system(const NumeratorSystem& ns);

/// nk copies of S; copy i uses x_{ni+1}..x_{n(i+1)} and u_{i+1}, while the
/// z-variables and t are shared.
struct DuplicatedSystem {
  RingPtr ring;  // x_1..x_{n^2 k}, u_1..u_{nk}, z_0..z_{nk-1}, t
  std::vector<QMPoly> Sdup;
  unsigned copies = 0;
  unsigned n = 0;
  std::vector<std::string> x_names, u_names, z_names;
};

DuplicatedSystem duplicate(const KernelSystem& ks);

/// The duplicated system with the Rabinowitsch generator
/// m * prod_{i<j} (u_i - u_j) - 1 (omitted for a single copy).
struct SaturatedSystem {
  RingPtr ring;  // x.., u.., [m], z.., t
  std::vector<QMPoly> gens;
  std::vector<std::string> unknowns;  // every variable except t
};

SaturatedSystem saturated_system(const DuplicatedSystem& ds);

struct ModularOptions {
  GbBudget gb;
  /// Wall-clock budget for a whole eliminant reconstruction.
  double max_seconds = 3600.0;
  /// Largest t-degree tried during interpolation.
  unsigned max_t_degree = 80;
  unsigned max_primes = 40;
  std::uint64_t seed = 1;
};

/// One Groebner basis over Z/p with t specialized to t0; nullopt when the
/// specialization hits a denominator divisible by p.
std::optional<Ideal<Fp>> modular_basis(const SaturatedSystem& sys, std::uint32_t p, std::uint32_t t0,
                                       const GbBudget& budget, GbStats* stats = nullptr);

struct GenericityResult {
  DimensionResult dimension;
  /// (prime, t0) pairs used; the first two must agree for the answer.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> samples;
  std::size_t basis_size = 0;
};

/// Dimension of the saturated duplicated ideal over Q(t), decided at random
/// specializations of t modulo large primes.
GenericityResult genericity_check(const DuplicatedSystem& ds, const ModularOptions& opts = {});

struct EliminantInfo {
  QMPoly poly;  // primitive in Q[z, t]
  unsigned primes_used = 0;
  unsigned points_used = 0;
  std::size_t ideal_degree = 0;
};

/// Primitive generator of the elimination ideal of the saturated duplicated
/// system in Q[target, t]: minimal polynomials of the target at random
/// specializations t = t0 mod p, interpolated in t and lifted by CRT.
EliminantInfo eliminant(const DuplicatedSystem& ds, const std::string& target, const ModularOptions& opts = {});

/// The scalar route for n = 1 over Q(t): a Groebner basis of
/// <E, dE/dx1, dE/du> with an elimination order, cleared of denominators.
QMPoly classical_scalar_eliminant(const NumeratorSystem& ns, const std::string& target, const GbBudget& budget = {});

/// Eliminates x_n, ..., x_2 from E_1..E_n by iterated resultants and drops
/// the factors shared with Det.
QMPoly reduce_to_scalar(const NumeratorSystem& ns);

/// Det divided by its largest power of (u - a).
std::pair<QMPoly, unsigned> strip_catalytic_power(const QMPoly& det, const NumeratorSystem& ns);

/// Puiseux analysis of Det(u) at the series solution of sys.
PuiseuxReport analyze_det_roots(const DDESystem& sys, const NumeratorSystem& ns, const QMPoly& det, std::size_t order,
                                const PuiseuxOptions& opts = {});

enum class DeformMode { off, on, automatic };
enum class Certificate { none, series_verified, divides_eliminant, both };
enum class SolveStatus { certified, budget_exceeded, non_generic };

struct SolveOptions {
  std::size_t order = 0;  // series order; 0 picks one from the guess caps
  std::string target = "z0";
  DeformMode deform = DeformMode::automatic;
  BigRat epsilon = BigRat(1);
  ModularOptions modular;
  unsigned max_guess_dz = 8;
  unsigned max_guess_dt = 8;
  unsigned guard = 8;
};

struct SolveReport {
  SolveStatus status = SolveStatus::certified;
  std::optional<QMPoly> eliminant;
  std::optional<QMPoly> minimal;
  Certificate certificate = Certificate::none;
  std::size_t series_order = 0;
  std::optional<GenericityResult> genericity;
  std::optional<GenericityResult> deformed_genericity;
  bool deformation_used = false;
  std::optional<DeformationParams> deformation;
  std::map<std::string, double> timings;
  std::map<std::string, std::size_t> sizes;
  std::vector<std::string> messages;
};

SolveReport solve(const DDESystem& sys, const SolveOptions& opts = {});

/// (2nk delta)^(2 n^3 k^2 + 2n) and (nk)!^(nk).
std::pair<BigInt, BigInt> degree_bound(unsigned n, unsigned k, unsigned delta);

std::string to_string(const DimensionResult& d);
std::string to_string(Certificate c);
std::string to_string(SolveStatus s);

}  // namespace catsolve
