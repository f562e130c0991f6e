#pragma once

// Reader for the canonical polynomial text form (and ordinary infix input):
// integers, rationals, variables, + - * ^, parentheses, division by
// non-zero constants.

#include "catsolve/bigrat.hpp"
#include "catsolve/mpoly.hpp"

#include <string>

namespace catsolve {

using QMPoly = MPoly<BigRat>;

/// Parses text into a polynomial of `ring`. Throws std::invalid_argument
/// with a character offset on malformed input or unknown variables.
QMPoly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace catsolve
