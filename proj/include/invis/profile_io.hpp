#pragma once

#include <string>

#include "invis/profiles.hpp"

namespace invis {

// Profile files are JSON objects:
//   {"n0": [re, im], "L_um": L, "optical": true,
//    "terms": [{"type": "exp", "z": [re, im], "K_per_um": K},
//              {"type": "const", "a": [re, im], "level": "index" | "potential"},
//              {"type": "poly", "coeffs": [[re, im], ...]},
//              {"type": "sin_pt", "nu0": nu0, "m": m, "r": r},
//              {"type": "table", "xs": [...], "fs": [[re, im], ...]}]}
// "optical" defaults to true, "terms" to [], "level" to "index" and "r" to 1.
// Unknown keys are rejected. Every failure throws ProfileFormatError.

IndexProfile parse_profile(const std::string& text);
IndexProfile load_profile(const std::string& path);

std::string dump_profile(const IndexProfile& profile);
void save_profile(const IndexProfile& profile, const std::string& path);

}  // namespace invis
