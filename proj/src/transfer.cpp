#include "invis/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invis/errors.hpp"

namespace invis {

namespace {

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

// Step-size controller exponents (PI control).
constexpr double kAlpha = 0.17;
constexpr double kBeta = 0.04;
constexpr double kSafety = 0.9;

double error_norm(const Mat2& err, const Mat2& y0, const Mat2& y1, double rtol, double atol) {
  const cplx e[4] = {err.m11, err.m12, err.m21, err.m22};
  const cplx a[4] = {y0.m11, y0.m12, y0.m21, y0.m22};
  const cplx b[4] = {y1.m11, y1.m12, y1.m21, y1.m22};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double r = std::abs(e[i]) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / 4.0);
}

}  // namespace

TransferMatrix Scattering::rebuild() const {
  return {t - r_left * r_right / t, r_right / t, -r_left / t, 1.0 / t};
}

TransferMatrix barrier_transfer(cplx n0, double tau) {
  if (tau <= 0.0) return Mat2::identity();
  const cplx phase = n0 * tau;
  const cplx s = std::sin(phase);
  const cplx c = std::cos(phase);
  const cplx s_over_n = tau * sinc(phase);  // sin(n0 tau) / n0, finite as n0 -> 0
  const cplx plus_s = 0.5 * (n0 * s + s_over_n);
  const cplx minus_s = 0.5 * (n0 * s - s_over_n);
  const cplx em = std::polar(1.0, -tau);
  const cplx ep = std::polar(1.0, tau);
  return {(c + kI * plus_s) * em, kI * minus_s * em, -kI * minus_s * ep, (c - kI * plus_s) * ep};
}

TransferMatrix evolve_potential(const PotentialFn& v, double k, double x0, double x1,
                                const EvolveOptions& options, EvolveStats* stats) {
  if (!(k > 0.0)) throw RangeViolation("evolve requires k > 0");
  const double t0 = k * x0;
  const double t1 = k * x1;
  Mat2 y = Mat2::identity();
  if (!(t1 > t0)) return y;

  const double inv_2k2 = 1.0 / (2.0 * k * k);
  auto rhs = [&](double tau, const Mat2& m) -> Mat2 {
    // Clamp so that rounding in tau / k never steps off the support.
    const cplx w = v(std::clamp(tau / k, x0, x1)) * inv_2k2;
    const cplx e_minus = std::polar(1.0, -2.0 * tau);
    const cplx e_plus = std::polar(1.0, 2.0 * tau);
    const Mat2 kern{1.0, e_minus, -e_plus, -1.0};
    return (-kI * w) * (kern * m);
  };

  double tau = t0;
  double h = (t1 - t0) / 1000.0;
  double err_prev = 1e-4;
  Mat2 k1 = rhs(tau, y);
  std::size_t accepted = 0;
  std::size_t rejected = 0;

  using namespace dp;
  while (tau < t1) {
    if (accepted + rejected >= options.max_steps) {
      std::ostringstream msg;
      msg << "evolve: step budget of " << options.max_steps << " exhausted at tau = " << tau;
      throw IntegrationFailure(msg.str());
    }
    bool last = false;
    if (tau + h >= t1) {
      h = t1 - tau;
      last = true;
    }

    const Mat2 k2 = rhs(tau + c2 * h, y + (h * a21) * k1);
    const Mat2 k3 = rhs(tau + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Mat2 k4 = rhs(tau + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Mat2 k5 = rhs(tau + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Mat2 k6 =
        rhs(tau + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Mat2 y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Mat2 k7 = rhs(tau + h, y_new);
    const Mat2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = error_norm(err, y, y_new, options.rtol, options.atol);
    if (!std::isfinite(en)) throw IntegrationFailure("evolve: non-finite error estimate");

    if (en <= 1.0) {
      tau = last ? t1 : tau + h;
      y = y_new;
      k1 = k7;
      ++accepted;
      double fac = en > 0.0 ? kSafety * std::pow(en, -kAlpha) * std::pow(err_prev, kBeta) : 10.0;
      fac = std::clamp(fac, 0.2, 10.0);
      err_prev = std::max(en, 1e-4);
      h *= fac;
    } else {
      ++rejected;
      h *= std::max(0.2, kSafety * std::pow(en, -0.2));
    }
    if (h < 1e-14 * std::max(1.0, std::abs(tau))) {
      std::ostringstream msg;
      msg << "evolve: step size underflow at tau = " << tau;
      throw IntegrationFailure(msg.str());
    }
  }
  if (stats) {
    stats->accepted = accepted;
    stats->rejected = rejected;
  }
  return y;
}

TransferMatrix evolve_exact(const IndexProfile& profile, double k, const EvolveOptions& options,
                            EvolveStats* stats) {
  const PotentialMode mode = options.mode;
  const PotentialFn v = [&profile, k, mode](double x) {
    return eval_potential(profile, k, x, mode);
  };
  return evolve_potential(v, k, 0.0, profile.length(), options, stats);
}

TransferMatrix slice_oracle(const IndexProfile& profile, double k, std::size_t n_slices,
                            PotentialMode mode) {
  if (n_slices < 1) throw RangeViolation("slice_oracle needs at least one slice");
  if (!(k > 0.0)) throw RangeViolation("slice_oracle requires k > 0");
  const double L = profile.length();
  const double width = L / static_cast<double>(n_slices);
  const double k2 = k * k;
  Mat2 total = Mat2::identity();
  for (std::size_t i = 0; i < n_slices; ++i) {
    const double a = L * static_cast<double>(i) / static_cast<double>(n_slices);
    const double mid = a + 0.5 * width;
    // Constant potential v on the segment acts like a uniform index
    // sqrt(1 - v / k^2); the barrier matrix is even in the index.
    const cplx n_eff = std::sqrt(1.0 - eval_potential(profile, k, mid, mode) / k2);
    const Mat2 segment = translation(k * a) * barrier_transfer(n_eff, k * width) *
                         translation(-k * a);
    total = segment * total;
  }
  return total;
}

Scattering scattering_of(const TransferMatrix& m) {
  const double norm = m.max_abs();
  if (!(std::abs(m.m22) >= 1e-14 * norm) || norm == 0.0)
    throw SpectralSingularity("M22 vanishes: spectral singularity");
  return {-m.m21 / m.m22, m.m12 / m.m22, 1.0 / m.m22};
}

double det_residual(const TransferMatrix& m) { return std::abs(m.det() - 1.0); }

}  // namespace invis
