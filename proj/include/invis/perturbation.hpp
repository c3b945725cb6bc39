#pragma once

#include <cstddef>

#include "invis/mat2.hpp"
#include "invis/profiles.hpp"
#include "invis/resonance.hpp"

namespace invis {

/// M0(tau)^{-1} K(tau) M0(tau) for the uniform slab of index n0, in closed form.
Mat2 khat(cplx n0, double tau);

/// First-order increment M^(1) = M0 Mhat^(1) from the closed-form Fourier
/// expressions. Row-two entries are the row-one expressions evaluated at -k.
Mat2 m1(const IndexProfile& profile, double k);

struct OrderTerm {
  Mat2 value;            // Richardson combination of the two grids
  Mat2 trapezoid;        // plain result on `panels` panels
  double error_estimate = 0.0;  // max-entry difference between the two grids
};

/// M^(ell) = M0 Mhat^(ell) for ell in {1, 2, 3}, with Mhat^(ell) the ell-fold
/// time-ordered integral of w1(tau) Khat(tau) evaluated by ell cumulative
/// trapezoid passes on a uniform grid over [0, kL]. The passes run on
/// `panels` and 2 * `panels` panels; `value` extrapolates the pair. In exact
/// mode w1 carries the full deviation v - v0, including the term quadratic
/// in f.
OrderTerm order_term(const IndexProfile& profile, double k, int ell, std::size_t panels = 8192,
                     PotentialMode mode = PotentialMode::linearized);

/// sum_{n <= N} M^(n), N in {0, 1, 2, 3}. In linearized mode the first
/// order uses m1; in exact mode every order comes from order_term.
Mat2 truncated_transfer(const IndexProfile& profile, double k, int N, std::size_t panels = 8192,
                        PotentialMode mode = PotentialMode::linearized);

// First-order data near k = k0 + k1 with n0 k0 L = pi m0.
struct NearResonance {
  double mu = 0.0;
  double x_plus = 0.0;
  double x_minus = 0.0;
  cplx y_zero;
  cplx y_plus;
  cplx y_minus;
};

/// mu = pi m0 (1 + 1/n0), X_pm = (n0^2 +- 1) k1 L / 2 and the Y coefficients
/// built from fourier_triple at k0. Throws InvalidResonance when the profile
/// does not match the working point or n0 k0 L is off pi m0 by more than 1e-6.
NearResonance near_resonance(const IndexProfile& profile, const ResonanceSpec& spec);

/// M0 + M1 to first order in k1 and the modulation, assembled from the
/// near-resonance coefficients:
///   M11 = e^{-i mu}(1 + i X+ + Y0),  M12 = e^{-i mu}(i X- + Y+),
///   M21 = -e^{i mu}(i X- + Y-),      M22 = e^{i mu}(1 - i X+ - Y0).
/// These drop the vacuum phase of the slab: they approximate
/// translation(-k1 L) * (M0 + M1), not M0 + M1 itself.
Mat2 near_resonance_matrix(const NearResonance& nr);

}  // namespace invis
