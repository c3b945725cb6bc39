#pragma once

#include <string>

#include "invis/invisibility.hpp"
#include "invis/mat2.hpp"

namespace invis {

/// JSON object with the spec, the Fourier triple, each residual as
/// {re, im, abs, rel}, the verdict string and epsilon (null when absent).
std::string report_json(const ConditionReport& report);

}  // namespace invis
