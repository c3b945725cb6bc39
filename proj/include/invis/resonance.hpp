#pragma once

#include <optional>

namespace invis {

// Working point k = k0 + k1 near a zeroth-order reflectionless wavenumber
// k0 = pi m0 / (n0 L) of the bare slab.
struct ResonanceSpec {
  int m0 = 1;
  std::optional<int> j0;
  double n0 = 1.0;
  double length = 1.0;
  double k0 = 0.0;
  double k1 = 0.0;

  double k() const { return k0 + k1; }
  double lambda_nm() const;
};

/// Builds a spec with k0 = pi m0 / (n0 L). Throws RangeViolation when
/// |k1| >= 0.1 k0, m0 < 1, L <= 0, n0 < 1, or j0 is inconsistent with n0.
ResonanceSpec make_resonance(int m0, std::optional<int> j0, double n0, double length,
                             double k1 = 0.0);

/// m0 / (2 j0 - m0). Requires m0 < 2 j0 <= 2 m0 (RangeViolation otherwise).
double rational_index(int m0, int j0);

/// Smallest m0 <= m_max admitting a j0 with rational_index(m0, j0) within
/// 1e-9 of n0_target and k0 within 5% of 2 pi / lambda. Throws
/// NoAdmissibleResonance.
ResonanceSpec find_resonance(double n0_target, double length, double lambda_nm, int m_max);

inline double wavelength_nm(double k_per_um) {
  return 2000.0 * 3.14159265358979323846 / k_per_um;
}

inline double wavenumber_per_um(double lambda_nm) {
  return 2000.0 * 3.14159265358979323846 / lambda_nm;
}

}  // namespace invis
