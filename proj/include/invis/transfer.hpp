#pragma once

#include <cstddef>
#include <functional>

#include "invis/mat2.hpp"
#include "invis/profiles.hpp"

namespace invis {

// M maps the asymptotic coefficients (A-, B-) of psi = A e^{ikx} + B e^{-ikx}
// on the left of the slab to (A+, B+) on the right.
using TransferMatrix = Mat2;

/// Reflection and transmission amplitudes for left and right incidence.
struct Scattering {
  cplx r_left;
  cplx r_right;
  cplx t;

  double rl2() const { return std::norm(r_left); }
  double rr2() const { return std::norm(r_right); }
  double t_minus_1_sq() const { return std::norm(t - 1.0); }

  /// M11 = T - Rl Rr / T, M12 = Rr / T, M21 = -Rl / T, M22 = 1 / T.
  TransferMatrix rebuild() const;
};

/// Transfer matrix of the uniform slab of index n0 on [0, tau / k], written in
/// terms of the phase tau = k x. Identity for tau <= 0.
TransferMatrix barrier_transfer(cplx n0, double tau);

struct EvolveOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 10'000'000;
  PotentialMode mode = PotentialMode::exact;
};

struct EvolveStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

using PotentialFn = std::function<cplx(double x)>;

/// Solves i dM/dtau = w(tau) K(tau) M from tau = k x0 to k x1 with M = I at
/// the start, where w = v(tau/k) / (2 k^2) and
/// K(tau) = [[1, e^{-2i tau}], [-e^{2i tau}, -1]]. The result is the transfer
/// matrix of v restricted to [x0, x1]. Throws IntegrationFailure.
TransferMatrix evolve_potential(const PotentialFn& v, double k, double x0, double x1,
                                const EvolveOptions& options = {}, EvolveStats* stats = nullptr);

/// Transfer matrix of the profile from the adaptive evolution over [0, L].
TransferMatrix evolve_exact(const IndexProfile& profile, double k, const EvolveOptions& options = {},
                            EvolveStats* stats = nullptr);

/// Independent cross-check: n_slices equal segments with the potential frozen at
/// each midpoint, composed as D(k a) M_barrier D(-k a) with the rightmost
/// segment outermost. Second order in the slice width.
TransferMatrix slice_oracle(const IndexProfile& profile, double k, std::size_t n_slices,
                            PotentialMode mode = PotentialMode::exact);

/// T = 1/M22, Rl = -M21/M22, Rr = M12/M22. Throws SpectralSingularity when
/// |M22| < 1e-14 ||M||.
Scattering scattering_of(const TransferMatrix& m);

/// |det M - 1|.
double det_residual(const TransferMatrix& m);

}  // namespace invis
