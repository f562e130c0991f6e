#pragma once

#include "catsolve/kernel.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsupport {

inline std::string fixture_path(const std::string& name) { return std::string(CATSOLVE_FIXTURES) + "/" + name; }

inline catsolve::DDESystem load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return catsolve::parse_dde(ss.str());
}

inline const char* kEx11Cubic =
    "64*t^3*z0^3 + (48*t^3 - 72*t^2 + 2*t)*z0^2 - (15*t^3 - 9*t^2 - 19*t + 1)*z0 + t^3 + 27*t^2 - 19*t + 1";

/// Random dense polynomial with small integer coefficients and bounded
/// degree in every variable.
inline catsolve::QMPoly random_poly(std::mt19937_64& rng, const catsolve::RingPtr& ring, unsigned max_deg,
                                    int coeff_range = 5, double density = 0.6) {
  using namespace catsolve;
  std::uniform_int_distribution<int> c(-coeff_range, coeff_range);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::size_t n = ring->nvars();
  std::vector<Term<BigRat>> terms;
  std::vector<unsigned> e(n, 0);
  while (true) {
    if (keep(rng) < density) {
      Monomial m;
      for (std::size_t v = 0; v < n; ++v)
        if (e[v]) m.set(v, static_cast<std::uint16_t>(e[v]));
      int x = c(rng);
      if (x) terms.push_back({m, BigRat(x)});
    }
    std::size_t v = 0;
    while (v < n && e[v] == max_deg) e[v++] = 0;
    if (v == n) break;
    ++e[v];
  }
  return QMPoly::from_terms(ring, std::move(terms));
}

}  // namespace testsupport
