#include "invis/resonance.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "invis/errors.hpp"

namespace invis {

double ResonanceSpec::lambda_nm() const { return wavelength_nm(k()); }

double rational_index(int m0, int j0) {
  if (m0 < 1 || !(m0 < 2 * j0 && 2 * j0 <= 2 * m0)) {
    std::ostringstream msg;
    msg << "rational_index: need m0 < 2 j0 <= 2 m0, got m0 = " << m0 << ", j0 = " << j0;
    throw RangeViolation(msg.str());
  }
  return static_cast<double>(m0) / static_cast<double>(2 * j0 - m0);
}

ResonanceSpec make_resonance(int m0, std::optional<int> j0, double n0, double length, double k1) {
  if (m0 < 1) throw RangeViolation("resonance: m0 must be positive");
  if (!(length > 0.0)) throw RangeViolation("resonance: L must be positive");
  if (!(n0 >= 1.0)) throw RangeViolation("resonance: n0 must be >= 1");
  if (j0) {
    rational_index(m0, *j0);
    if (std::abs(n0 * (2 * *j0 - m0) - m0) > 1e-12 * m0)
      throw RangeViolation("resonance: n0 does not equal m0 / (2 j0 - m0)");
  }
  ResonanceSpec spec;
  spec.m0 = m0;
  spec.j0 = j0;
  spec.n0 = n0;
  spec.length = length;
  spec.k0 = std::numbers::pi * m0 / (n0 * length);
  spec.k1 = k1;
  if (!(std::abs(k1) < 0.1 * spec.k0))
    throw RangeViolation("resonance: |k1| must stay below 0.1 k0");
  return spec;
}

ResonanceSpec find_resonance(double n0_target, double length, double lambda_nm, int m_max) {
  if (!(n0_target >= 1.0)) throw RangeViolation("find_resonance: n0 must be >= 1");
  if (!(length > 0.0) || !(lambda_nm > 0.0))
    throw RangeViolation("find_resonance: L and lambda must be positive");
  const double k_target = wavenumber_per_um(lambda_nm);
  for (int m0 = 1; m0 <= m_max; ++m0) {
    // n0 = m0 / (2 j0 - m0)  <=>  j0 = m0 (1 + 1/n0) / 2
    const int j0 = static_cast<int>(std::lround(0.5 * m0 * (1.0 + 1.0 / n0_target)));
    if (!(m0 < 2 * j0 && 2 * j0 <= 2 * m0)) continue;
    const double n = rational_index(m0, j0);
    if (std::abs(n - n0_target) > 1e-9) continue;
    const double k0 = std::numbers::pi * m0 / (n0_target * length);
    if (std::abs(k0 - k_target) > 0.05 * k_target) continue;
    return make_resonance(m0, j0, n0_target, length, 0.0);
  }
  std::ostringstream msg;
  msg << "no (m0, j0) with m0 <= " << m_max << " matches n0 = " << n0_target
      << " near lambda = " << lambda_nm << " nm";
  throw NoAdmissibleResonance(msg.str());
}

}  // namespace invis
