#include "invis/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "invis/errors.hpp"
#include "invis/transfer.hpp"

namespace invis {

namespace {

// sin(z) / z, finite at 0.
cplx sinc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// Row-one entries of M^(1) at signed wavenumber k.
std::pair<cplx, cplx> first_order_row(const IndexProfile& profile, double k) {
  const cplx n = profile.n0();
  const double L = profile.length();
  const FourierTriple v = fourier_triple_signed(profile, k);
  const cplx n2 = n * n;
  const cplx a = n * k * L;
  const cplx ea = std::exp(kI * a);
  const cplx ema = std::exp(-kI * a);
  const cplx pref = std::polar(1.0, -k * L) / (8.0 * kI * k * n2);
  const cplx m11 = pref * ((n2 - 1.0) * (ea * v.v_plus + ema * v.v_minus) +
                           (2.0 * (n2 + 1.0) * std::cos(a) + 4.0 * kI * n * std::sin(a)) * v.v_zero);
  const cplx m12 = pref * ((n + 1.0) * (n + 1.0) * ea * v.v_plus +
                           (n - 1.0) * (n - 1.0) * ema * v.v_minus +
                           2.0 * (n2 - 1.0) * std::cos(a) * v.v_zero);
  return {m11, m12};
}

}  // namespace

Mat2 khat(cplx n0, double tau) {
  const cplx phase = n0 * tau;
  const cplx c = std::cos(phase);
  const cplx s = tau * sinc(phase);  // sin(n0 tau) / n0
  const cplx diag = c * c + s * s;
  const cplx minus = c - kI * s;
  const cplx plus = c + kI * s;
  return {diag, minus * minus, -(plus * plus), -diag};
}

Mat2 m1(const IndexProfile& profile, double k) {
  if (!(k > 0.0)) throw RangeViolation("m1 requires k > 0");
  const auto [m11, m12] = first_order_row(profile, k);
  const auto [m22, m21] = first_order_row(profile, -k);
  return {m11, m12, m21, m22};
}

OrderTerm order_term(const IndexProfile& profile, double k, int ell, std::size_t panels,
                     PotentialMode mode) {
  if (ell < 1 || ell > 3) throw RangeViolation("order_term: ell must be 1, 2 or 3");
  if (panels < 2) throw RangeViolation("order_term: need at least two panels");
  if (!(k > 0.0)) throw RangeViolation("order_term requires k > 0");

  const cplx n0 = profile.n0();
  const double L = profile.length();
  const double k2 = k * k;
  const cplx offset = profile.potential_offset();
  const std::size_t fine = 2 * panels;
  const double h = k * L / static_cast<double>(fine);

  // w1(tau) Khat(tau) on the fine grid; w1 = (v - v0) / (2 k^2).
  std::vector<Mat2> a(fine + 1);
  for (std::size_t i = 0; i <= fine; ++i) {
    const double tau = h * static_cast<double>(i);
    const double x = (i == fine) ? L : std::min(tau / k, L);
    const cplx f = profile.modulation(x);
    cplx dv = -2.0 * k2 * n0 * f + offset;
    if (mode == PotentialMode::exact) dv -= k2 * f * f;
    a[i] = khat(n0, tau) * (dv / (2.0 * k2));
  }

  auto nested = [&](std::size_t stride) {
    const std::size_t n = fine / stride;
    const double step = h * static_cast<double>(stride);
    std::vector<Mat2> prev(n + 1, Mat2::identity());
    std::vector<Mat2> cur(n + 1);
    for (int pass = 0; pass < ell; ++pass) {
      cur[0] = Mat2::zero();
      Mat2 left = a[0] * prev[0];
      for (std::size_t j = 0; j < n; ++j) {
        const Mat2 right = a[(j + 1) * stride] * prev[j + 1];
        cur[j + 1] = cur[j] + (0.5 * step) * (left + right);
        left = right;
      }
      prev.swap(cur);
    }
    cplx phase = 1.0;
    for (int p = 0; p < ell; ++p) phase *= -kI;
    return phase * prev[n];
  };

  const Mat2 m0 = barrier_transfer(n0, k * L);
  const Mat2 coarse = nested(2);
  const Mat2 finer = nested(1);
  OrderTerm out;
  out.trapezoid = m0 * coarse;
  out.value = m0 * (finer + (1.0 / 3.0) * (finer - coarse));
  out.error_estimate = max_abs_diff(m0 * finer, out.trapezoid);
  return out;
}

Mat2 truncated_transfer(const IndexProfile& profile, double k, int N, std::size_t panels,
                        PotentialMode mode) {
  if (N < 0 || N > 3) throw RangeViolation("truncated_transfer: N must be in 0..3");
  Mat2 total = barrier_transfer(profile.n0(), k * profile.length());
  for (int n = 1; n <= N; ++n) {
    if (n == 1 && mode == PotentialMode::linearized)
      total += m1(profile, k);
    else
      total += order_term(profile, k, n, panels, mode).value;
  }
  return total;
}

NearResonance near_resonance(const IndexProfile& profile, const ResonanceSpec& spec) {
  const double n0 = spec.n0;
  const double L = spec.length;
  if (std::abs(profile.n0() - cplx{n0, 0.0}) > 1e-9 * n0 ||
      std::abs(profile.length() - L) > 1e-12 * L)
    throw InvalidResonance("near_resonance: profile baseline or thickness differs from the working point");
  if (std::abs(n0 * spec.k0 * L - std::numbers::pi * spec.m0) > 1e-6)
    throw InvalidResonance("near_resonance: n0 k0 L is not pi m0");

  const double k0 = spec.k0;
  const FourierTriple v = fourier_triple(profile, k0);
  const double n2 = n0 * n0;
  const cplx denom = 8.0 * kI * k0 * n2;
  NearResonance nr;
  nr.mu = std::numbers::pi * spec.m0 * (1.0 + 1.0 / n0);
  nr.x_plus = 0.5 * (n2 + 1.0) * spec.k1 * L;
  nr.x_minus = 0.5 * (n2 - 1.0) * spec.k1 * L;
  nr.y_zero = ((n2 - 1.0) * (v.v_plus + v.v_minus) + 2.0 * (n2 + 1.0) * v.v_zero) / denom;
  const double wp = (n0 + 1.0) * (n0 + 1.0);
  const double wm = (n0 - 1.0) * (n0 - 1.0);
  nr.y_plus = (wp * v.v_plus + wm * v.v_minus + 2.0 * (n2 - 1.0) * v.v_zero) / denom;
  nr.y_minus = (wp * v.v_minus + wm * v.v_plus + 2.0 * (n2 - 1.0) * v.v_zero) / denom;
  return nr;
}

Mat2 near_resonance_matrix(const NearResonance& nr) {
  const cplx em = std::polar(1.0, -nr.mu);
  const cplx ep = std::polar(1.0, nr.mu);
  return {em * (1.0 + kI * nr.x_plus + nr.y_zero), em * (kI * nr.x_minus + nr.y_plus),
          -ep * (kI * nr.x_minus + nr.y_minus), ep * (1.0 - kI * nr.x_plus - nr.y_zero)};
}

}  // namespace invis
