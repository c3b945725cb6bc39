// Closed-form Fourier transforms of the modulation terms, f~(q) =
// int_0^L exp(-i q x) f(x) dx. The frequency is complex so that the same
// code serves complex baselines, where the first-order formulas sample the
// transform at +-2 n0 k.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invis/errors.hpp"
#include "invis/profiles.hpp"
#include "overloaded.hpp"

namespace invis {

namespace {

using detail::Overloaded;

cplx sinc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// int_0^L exp(i delta x) dx = L e^{i delta L / 2} sinc(delta L / 2). Stable
// through delta -> 0, where the quotient form cancels catastrophically.
cplx phase_integral(cplx delta, double L) {
  const cplx half = 0.5 * delta * L;
  return L * std::exp(kI * half) * sinc(half);
}

// int_0^L x^j exp(-i q x) dx for j = 0..degree.
std::vector<cplx> monomial_transforms(cplx q, double L, std::size_t degree) {
  std::vector<cplx> out(degree + 1);
  const cplx s = -kI * q;
  const double sL = std::abs(s) * L;
  out[0] = phase_integral(-q, L);
  if (degree == 0) return out;

  if (sL >= 2.0 * static_cast<double>(degree + 1)) {
    // Upward recursion I_j = (L^j e^{sL} - j I_{j-1}) / s; error does not
    // grow while j < |s| L.
    const cplx esl = std::exp(s * L);
    double Lj = 1.0;
    for (std::size_t j = 1; j <= degree; ++j) {
      Lj *= L;
      out[j] = (Lj * esl - static_cast<double>(j) * out[j - 1]) / s;
    }
    return out;
  }

  // Power series of the exponential; |s| L is small so cancellation is mild.
  for (std::size_t j = 1; j <= degree; ++j) {
    const double Lj1 = std::pow(L, static_cast<double>(j + 1));
    cplx sum = 0.0;
    cplx power = 1.0;  // (sL)^n / n!
    for (int n = 0; n < 600; ++n) {
      if (n > 0) power *= s * L / static_cast<double>(n);
      const cplx term = power * Lj1 / static_cast<double>(static_cast<std::size_t>(n) + j + 1);
      sum += term;
      if (n > sL + 4.0 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    out[j] = sum;
  }
  return out;
}

// Adaptive Simpson on one linear segment of a tabulated term.
struct SimpsonSegment {
  double a, b;
  cplx fa, fb;
  cplx q;

  cplx integrand(double x) const {
    const double w = (x - a) / (b - a);
    return ((1.0 - w) * fa + w * fb) * std::exp(-kI * q * x);
  }

  cplx recurse(double lo, double hi, cplx g_lo, cplx g_mid, cplx g_hi, cplx whole, double eps,
               int depth) const {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const cplx g_lm = integrand(lm);
    const cplx g_rm = integrand(rm);
    const cplx left = (mid - lo) / 6.0 * (g_lo + 4.0 * g_lm + g_mid);
    const cplx right = (hi - mid) / 6.0 * (g_mid + 4.0 * g_rm + g_hi);
    const cplx delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= 50) throw QuadratureFailure("adaptive Simpson: recursion limit reached");
    return recurse(lo, mid, g_lo, g_lm, g_mid, left, 0.5 * eps, depth + 1) +
           recurse(mid, hi, g_mid, g_rm, g_hi, right, 0.5 * eps, depth + 1);
  }

  cplx integrate(double eps) const {
    // Start from panels short enough that the oscillation is resolved.
    const double width = b - a;
    const int panels = 1 + static_cast<int>(std::ceil(std::abs(q) * width / 0.5));
    const double h = width / panels;
    cplx total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double hi = (p + 1 == panels) ? b : lo + h;
      const cplx g_lo = integrand(lo);
      const cplx g_hi = integrand(hi);
      const cplx g_mid = integrand(0.5 * (lo + hi));
      const cplx whole = (hi - lo) / 6.0 * (g_lo + 4.0 * g_mid + g_hi);
      total += recurse(lo, hi, g_lo, g_mid, g_hi, whole, eps / panels, 0);
    }
    return total;
  }
};

cplx tabulated_transform(const Tabulated& t, cplx q) {
  double scale = 0.0;
  for (std::size_t i = 1; i < t.xs.size(); ++i)
    scale += 0.5 * (t.xs[i] - t.xs[i - 1]) * (std::abs(t.fs[i]) + std::abs(t.fs[i - 1]));
  const double tol = std::max(1e-12 * scale, 1e-15);
  const double span = t.xs.back() - t.xs.front();
  cplx total = 0.0;
  for (std::size_t i = 1; i < t.xs.size(); ++i) {
    const SimpsonSegment seg{t.xs[i - 1], t.xs[i], t.fs[i - 1], t.fs[i], q};
    total += seg.integrate(tol * (seg.b - seg.a) / span);
  }
  return total;
}

}  // namespace

cplx fourier_term(const ModulationTerm& term, double length, cplx q) {
  const double L = length;
  return std::visit(
      Overloaded{
          [&](const Exponential& e) { return e.z * phase_integral(e.K - q, L); },
          [&](const ConstantShift& c) { return c.a * phase_integral(-q, L); },
          [&](const Polynomial& p) -> cplx {
            if (p.coeffs.empty()) return 0.0;
            const auto moments = monomial_transforms(q, L, p.coeffs.size() - 1);
            cplx sum = 0.0;
            for (std::size_t j = 0; j < p.coeffs.size(); ++j) sum += p.coeffs[j] * moments[j];
            return sum;
          },
          [&](const SinusoidPT& s) {
            const double K = 2.0 * std::numbers::pi * s.m / L;
            return s.nu0 * (0.5 * (1.0 + s.r) * phase_integral(K - q, L) +
                            0.5 * (1.0 - s.r) * phase_integral(-K - q, L));
          },
          [&](const Tabulated& t) { return tabulated_transform(t, q); },
      },
      term);
}

cplx fourier_modulation(const IndexProfile& profile, cplx q) {
  cplx sum = 0.0;
  for (const auto& t : profile.terms()) {
    if (const auto* c = std::get_if<ConstantShift>(&t); c && c->potential_level) continue;
    sum += fourier_term(t, profile.length(), q);
  }
  return sum;
}

cplx fourier_modulation(const IndexProfile& profile, double q) {
  return fourier_modulation(profile, cplx{q, 0.0});
}

cplx fourier_nu(const IndexProfile& profile, double q) {
  return 0.5 * (fourier_modulation(profile, q) + std::conj(fourier_modulation(profile, -q)));
}

cplx fourier_kappa(const IndexProfile& profile, double q) {
  return (fourier_modulation(profile, q) - std::conj(fourier_modulation(profile, -q))) /
         (2.0 * kI);
}

FourierTriple fourier_triple_signed(const IndexProfile& profile, double k) {
  const cplx n0 = profile.n0();
  const double L = profile.length();
  const cplx prefactor = -2.0 * k * k * n0;
  const cplx offset = profile.potential_offset();
  const cplx q = 2.0 * n0 * k;

  auto at = [&](cplx freq) {
    cplx v = prefactor * fourier_modulation(profile, freq);
    if (offset != cplx{}) v += offset * phase_integral(-freq, L);
    return v;
  };
  return {at(q), at(-q), at(0.0)};
}

FourierTriple fourier_triple(const IndexProfile& profile, double k) {
  if (!(k > 0.0)) throw RangeViolation("fourier_triple requires k > 0");
  return fourier_triple_signed(profile, k);
}

}  // namespace invis
