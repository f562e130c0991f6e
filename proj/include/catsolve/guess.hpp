#pragma once

// Guessing an annihilating polynomial P(z, t) of a truncated series by
// exact linear algebra, and the certificates attached to such guesses.

#include "catsolve/polyparse.hpp"
#include "catsolve/series.hpp"

#include <optional>
#include <string>

namespace catsolve {

struct GuessCandidate {
  QMPoly poly;  // in the ring (z, t)
  unsigned dz = 0;
  unsigned dt = 0;
  std::size_t verified_order = 0;
};

/// The ring (z, t) used for eliminants and guesses.
RingPtr zt_ring(const std::string& z);

/// Integer primitive associate with positive leading coefficient.
QMPoly normalize_primitive(const QMPoly& p);

/// Smallest annihilating polynomial of bidegree at most (dz, dt), or
/// nullopt when none exists to the available order. Needs
/// s.order() >= (dz+1)(dt+1) + guard.
std::optional<GuessCandidate> guess_minpoly(const TruncTSeries& s, unsigned dz, unsigned dt, unsigned guard = 8,
                                            const std::string& z = "z0");

/// Diagonal sweep over (dz, dt) by dz + dt, then dz, stopping at the first
/// candidate. Bidegrees the truncation cannot support are skipped.
std::optional<GuessCandidate> guess_sweep(const TruncTSeries& s, unsigned max_dz, unsigned max_dt,
                                          unsigned guard = 8, const std::string& z = "z0");

/// p(s, t) == 0 mod t^order, where p lives in a ring (z, t).
bool verify_annihilation(const QMPoly& p, const TruncTSeries& s, std::size_t order);

/// candidate divides eliminant in Q[t][z] (z is the name of the main
/// variable).
bool certify_divides(const QMPoly& candidate, const QMPoly& eliminant, const std::string& z);

}  // namespace catsolve
