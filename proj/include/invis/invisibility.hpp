#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invis/profiles.hpp"
#include "invis/resonance.hpp"

namespace invis {

enum class Verdict {
  left_invisible,
  right_invisible,
  bidirectional,
  reflectionless_left_only,
  reflectionless_right_only,
  transparent_only,
  none,
};

std::string to_string(Verdict v);

// First-order reflectionlessness and transparency residuals at
// k = k0 + k1, with s = 2 n0^2 k0 k1 L:
//   left:  (n0+1)^2 v- + (n0-1)^2 v+ + 2 (n0^2-1)(v0 - s)
//   right: (n0+1)^2 v+ + (n0-1)^2 v- + 2 (n0^2-1)(v0 - s)
//   trans: (n0^2-1)(v+ + v-) + 2 (n0^2+1)(v0 - s)
struct ConditionReport {
  ResonanceSpec spec;
  FourierTriple triple;
  cplx res_left;
  cplx res_right;
  cplx res_transmission;
  // |v+| + |v-| + |v0| + 2 n0^2 k0 |k1| L + 1e-6 ||v1||_1 + 1e-300
  double scale = 0.0;
  double tol = 1e-8;
  bool phase_ok = false;  // |e^{i mu} - 1| <= 1e-10
  std::optional<cplx> ratio_theorem1;  // v+ / v-
  Verdict verdict = Verdict::none;
  std::optional<int> epsilon;  // -1 left, +1 right

  double rel_left() const { return std::abs(res_left) / scale; }
  double rel_right() const { return std::abs(res_right) / scale; }
  double rel_transmission() const { return std::abs(res_transmission) / scale; }
};

/// Evaluates the residuals with fourier_triple at k0 and assigns the verdict:
/// a residual is satisfied at rel <= tol and violated at rel > 10 tol.
/// Throws InvalidResonance when the profile does not match the spec.
ConditionReport condition_residuals(const IndexProfile& profile, const ResonanceSpec& spec,
                                    double tol = 1e-8);

// Specialisation to PT-symmetric profiles, in terms of nu~ and kappa~ at
// 2 n0 k0 and at 0.
struct PTConditions {
  cplx nu_plus;
  cplx kappa_plus;
  cplx nu_zero;
  cplx kappa_zero;
  // kappa~(2 n0 k0) - 2 i eps n0 nu~(2 n0 k0) / (n0^2 + 1), eps = -1 and +1.
  cplx necessary_left;
  cplx necessary_right;
  // (n0^2+1) nu~ + 2 i eps n0 kappa~ + (n0^2-1)[nu~(0) + n0 L k1 / k0] at spec.k1.
  cplx reflectionless_left;
  cplx reflectionless_right;
  double k1_transparent = 0.0;
  // n0 = 1 forms: nu~(2 k0) + i eps kappa~(2 k0) and -k0 nu~(0) / L.
  std::optional<cplx> unit_index_left;
  std::optional<cplx> unit_index_right;
  std::optional<double> unit_index_k1;
  bool constant_nu = false;  // unidirectional invisibility impossible
};

/// Throws NotPTSymmetric, InvalidResonance.
PTConditions pt_conditions(const IndexProfile& profile, const ResonanceSpec& spec);

// Single exponential v0 + z e^{iKx} (index modulation nu0 e^{iKx}).
struct LocallyPeriodicReport {
  bool integer_multiple = false;  // K = +-2 pi m / L
  int m = 0;
  bool matches_m0 = false;
  // Integer-multiple case with m = m0: k1 per unit nu0 for left/right
  // reflectionlessness and for transparency.
  std::optional<double> k1_left_per_nu0;
  std::optional<double> k1_right_per_nu0;
  std::optional<double> k1_transparent_per_nu0;
  // Otherwise: frequencies giving reflectionlessness or transparency at k1 = 0.
  std::vector<double> K_left;
  std::vector<double> K_right;
  std::vector<double> K_transparent;
  // Whether the property holds at spec.k1 whatever the amplitude nu0.
  bool reflectionless_left = false;
  bool reflectionless_right = false;
  bool transparent = false;
  bool invisible = false;
  std::optional<int> epsilon;
};

LocallyPeriodicReport classify_locally_periodic(double n0, double length, double K,
                                                const ResonanceSpec& spec);

enum class Direction { left, right };

struct TwoExponentialDesign {
  IndexProfile profile;
  double K2 = 0.0;
  cplx z1;  // potential-level amplitudes (1/um^2)
  cplx z2;
};

/// Left (right) invisible pair v0 + z1 e^{iK1x} + z2 e^{iK2x} at k0 with k1 = 0:
///   (K1 - 2e k0)(K2 - 2e k0) = -2 (n0^2 - 1) k0^2,
///   z2 = -F1 G1(e k0) z1 / (F2 G2(e k0)),
///   F = (1 - e^{iKL}) / K,  G(k) = (K - (1 + n0) k) / (K - 2 n0 k),
/// with e = +1 for left and -1 for right. The potential amplitudes are
/// stored as index amplitudes -z / (2 n0 k0^2).
/// Throws DegenerateFrequency, BidirectionalLocus, InvalidResonance.
TwoExponentialDesign design_two_exponential(const ResonanceSpec& spec, double K1, cplx z1,
                                            Direction direction);

/// Profile whose linearized potential at k0 is v0 + i z sin(K1 (x - L/2)),
/// K1 = sqrt(2 (n0^2 + 1)) k0. Throws InvalidResonance, RangeViolation.
IndexProfile design_bidirectional_sinusoid(const ResonanceSpec& spec, cplx z);

double bidirectional_frequency(const ResonanceSpec& spec);

/// k1 = v0~ / (2 n0^2 k0 L), valid once v+~ and v-~ vanish. Throws
/// ConditionsUnmet when |v+-| exceeds tol times the L1 norm of v1, and
/// ComplexK1 when the result is not real.
double bidirectional_k1(const IndexProfile& profile, const ResonanceSpec& spec, double tol = 1e-8);

/// Working point of the partner profile built by theorem5_partner:
/// k0' = pi m0 / (n0' L) and
/// k1' = -pi m0 alpha / (n0'^2 (n0'^2 + 1) L^2) [(n0'^2 - 1) nu~(2 pi m0 / L) + (n0'^2 + 1) nu~(0)]
/// with nu~ taken from the seed.
ResonanceSpec theorem5_partner_spec(const IndexProfile& seed, const ResonanceSpec& spec,
                                    double alpha, double n0_check);

}  // namespace invis
