#pragma once

// JSON and plain-text renderings of the pipeline results (schema 1).
// Polynomials are canonical strings and rationals are "num/den" strings.

#include "catsolve/kernel.hpp"

#include <json.hpp>

namespace catsolve {

std::string rational_string(const BigRat& q);

nlohmann::json to_json(const GenericityResult& g);
nlohmann::json to_json(const DeformationParams& d);
nlohmann::json to_json(const PuiseuxReport& r);

/// Timings are wall-clock and therefore left out unless asked for, so that
/// reruns give byte-identical reports.
nlohmann::json to_json(const DDESystem& sys, const SolveReport& rep, bool with_timings);

std::string to_text(const PuiseuxReport& r);
std::string to_text(const SolveReport& rep);

}  // namespace catsolve
