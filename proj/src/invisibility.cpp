#include "invis/invisibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invis/errors.hpp"

namespace invis {

namespace {

constexpr double kScaleFloor = 1e-300;
// Floor on the residual scale, relative to the modulation's L1 norm. With the
// default tol a residual below 1e-14 ||v1||_1 counts as zero, which keeps
// transforms that cancel to roundoff from producing arbitrary verdicts.
constexpr double kRoundoffFloor = 1e-6;

void check_match(const IndexProfile& profile, const ResonanceSpec& spec, const char* who) {
  const double n0 = spec.n0;
  if (std::abs(profile.n0() - cplx{n0, 0.0}) > 1e-9 * n0)
    throw InvalidResonance(std::string(who) + ": profile n0 differs from the working point");
  if (std::abs(profile.length() - spec.length) > 1e-12 * spec.length)
    throw InvalidResonance(std::string(who) + ": profile thickness differs from the working point");
  if (std::abs(n0 * spec.k0 * spec.length - std::numbers::pi * spec.m0) > 1e-6)
    throw InvalidResonance(std::string(who) + ": n0 k0 L is not pi m0");
}

// L1 norm of v1 = -2 k0^2 n0 f + potential shifts, by the midpoint rule.
double modulation_l1(const IndexProfile& profile, double k0) {
  constexpr int samples = 4096;
  const double L = profile.length();
  const cplx pref = -2.0 * k0 * k0 * profile.n0();
  const cplx offset = profile.potential_offset();
  double norm = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = L * (i + 0.5) / samples;
    norm += std::abs(pref * profile.modulation(x) + offset);
  }
  return norm * L / samples;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::left_invisible: return "left-invisible";
    case Verdict::right_invisible: return "right-invisible";
    case Verdict::bidirectional: return "bidirectional";
    case Verdict::reflectionless_left_only: return "reflectionless-left-only";
    case Verdict::reflectionless_right_only: return "reflectionless-right-only";
    case Verdict::transparent_only: return "transparent-only";
    case Verdict::none: return "none";
  }
  return "none";
}

ConditionReport condition_residuals(const IndexProfile& profile, const ResonanceSpec& spec,
                                    double tol) {
  check_match(profile, spec, "condition_residuals");
  const double n0 = spec.n0;
  const double n2 = n0 * n0;
  const double L = spec.length;

  ConditionReport r;
  r.spec = spec;
  r.tol = tol;
  r.triple = fourier_triple(profile, spec.k0);
  const cplx vp = r.triple.v_plus;
  const cplx vm = r.triple.v_minus;
  const double s = 2.0 * n2 * spec.k0 * spec.k1 * L;
  const cplx v0s = r.triple.v_zero - s;
  const double wp = (n0 + 1.0) * (n0 + 1.0);
  const double wm = (n0 - 1.0) * (n0 - 1.0);
  r.res_left = wp * vm + wm * vp + 2.0 * (n2 - 1.0) * v0s;
  r.res_right = wp * vp + wm * vm + 2.0 * (n2 - 1.0) * v0s;
  r.res_transmission = (n2 - 1.0) * (vp + vm) + 2.0 * (n2 + 1.0) * v0s;
  r.scale = std::abs(vp) + std::abs(vm) + std::abs(r.triple.v_zero) + std::abs(s) +
            kRoundoffFloor * modulation_l1(profile, spec.k0) + kScaleFloor;
  if (vm != cplx{}) r.ratio_theorem1 = vp / vm;

  const double mu = std::numbers::pi * spec.m0 * (1.0 + 1.0 / n0);
  r.phase_ok = std::abs(std::polar(1.0, mu) - 1.0) <= 1e-10;

  const bool left = r.rel_left() <= tol;
  const bool right = r.rel_right() <= tol;
  const bool trans = r.rel_transmission() <= tol && r.phase_ok;
  const bool left_violated = r.rel_left() > 10.0 * tol;
  const bool right_violated = r.rel_right() > 10.0 * tol;

  if (left && right && trans) {
    r.verdict = Verdict::bidirectional;
  } else if (left && trans && right_violated) {
    r.verdict = Verdict::left_invisible;
    r.epsilon = -1;
  } else if (right && trans && left_violated) {
    r.verdict = Verdict::right_invisible;
    r.epsilon = 1;
  } else if (left && !right) {
    r.verdict = Verdict::reflectionless_left_only;
  } else if (right && !left) {
    r.verdict = Verdict::reflectionless_right_only;
  } else if (trans && !left && !right) {
    r.verdict = Verdict::transparent_only;
  } else {
    r.verdict = Verdict::none;
  }
  return r;
}

PTConditions pt_conditions(const IndexProfile& profile, const ResonanceSpec& spec) {
  if (!is_pt_symmetric(profile)) throw NotPTSymmetric("pt_conditions: profile is not PT-symmetric");
  check_match(profile, spec, "pt_conditions");
  const double n0 = spec.n0;
  const double n2 = n0 * n0;
  const double k0 = spec.k0;
  const double L = spec.length;
  const double q = 2.0 * n0 * k0;

  PTConditions c;
  c.nu_plus = fourier_nu(profile, q);
  c.kappa_plus = fourier_kappa(profile, q);
  c.nu_zero = fourier_nu(profile, 0.0);
  c.kappa_zero = fourier_kappa(profile, 0.0);
  for (int eps : {-1, 1}) {
    const cplx necessary = c.kappa_plus - 2.0 * kI * double(eps) * n0 * c.nu_plus / (n2 + 1.0);
    const cplx refl = (n2 + 1.0) * c.nu_plus + 2.0 * kI * double(eps) * n0 * c.kappa_plus +
                      (n2 - 1.0) * (c.nu_zero + n0 * L * spec.k1 / k0);
    (eps < 0 ? c.necessary_left : c.necessary_right) = necessary;
    (eps < 0 ? c.reflectionless_left : c.reflectionless_right) = refl;
  }
  c.k1_transparent =
      (-k0 / (n0 * (n2 + 1.0) * L) * ((n2 - 1.0) * c.nu_plus + (n2 + 1.0) * c.nu_zero)).real();
  if (std::abs(n0 - 1.0) <= 1e-12) {
    c.unit_index_left = c.nu_plus - kI * c.kappa_plus;
    c.unit_index_right = c.nu_plus + kI * c.kappa_plus;
    c.unit_index_k1 = (-k0 * c.nu_zero / L).real();
  }

  // nu = Re f constant on [0, L]
  constexpr int samples = 1024;
  double lo = 0.0;
  double hi = 0.0;
  double fmax = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const cplx f = profile.modulation(L * i / samples);
    lo = i == 0 ? f.real() : std::min(lo, f.real());
    hi = i == 0 ? f.real() : std::max(hi, f.real());
    fmax = std::max(fmax, std::abs(f));
  }
  c.constant_nu = hi - lo <= 1e-12 * (1.0 + fmax);
  return c;
}

LocallyPeriodicReport classify_locally_periodic(double n0, double length, double K,
                                                const ResonanceSpec& spec) {
  if (K == 0.0) throw RangeViolation("classify_locally_periodic: K must be nonzero");
  if (std::abs(n0 - spec.n0) > 1e-9 * n0 || std::abs(length - spec.length) > 1e-12 * length)
    throw InvalidResonance("classify_locally_periodic: n0 or L differ from the working point");

  const double k0 = spec.k0;
  const double n2 = n0 * n0;
  const bool rational =
      std::abs(std::polar(1.0, std::numbers::pi * spec.m0 * (1.0 + 1.0 / n0)) - 1.0) <= 1e-10;
  LocallyPeriodicReport r;

  const double base = 2.0 * std::numbers::pi / length;
  const int m = static_cast<int>(std::lround(std::abs(K) / base));
  r.integer_multiple = m >= 1 && std::abs(std::abs(K) - m * base) <= 1e-9 * std::abs(K);

  if (r.integer_multiple) {
    r.m = m;
    r.matches_m0 = m == spec.m0;
    if (!r.matches_m0) return r;
    // Only v+ (K > 0) or v- (K < 0) survives, equal to -2 k0^2 n0 nu0 L. The
    // condition in which it carries the weight (n0 - 1)^2 gives the ratio
    // (n0 - 1)/(n0 + 1); the other gives (n0 + 1)/(n0 - 1), absent at n0 = 1.
    const double scale = -k0 / (2.0 * n0);
    const double small = scale * (n0 - 1.0) / (n0 + 1.0);
    std::optional<double> large;
    if (n0 > 1.0) large = scale * (n0 + 1.0) / (n0 - 1.0);
    r.k1_left_per_nu0 = K > 0 ? std::optional<double>(small) : large;
    r.k1_right_per_nu0 = K > 0 ? large : std::optional<double>(small);
    if (rational) r.k1_transparent_per_nu0 = scale * (n2 - 1.0) / (n2 + 1.0);

    const double tol = 1e-12 * k0;
    const double k1 = spec.k1;
    auto holds = [&](const std::optional<double>& per_nu0) {
      return per_nu0 && std::abs(*per_nu0) <= tol && std::abs(k1) <= tol;
    };
    r.reflectionless_left = holds(r.k1_left_per_nu0);
    r.reflectionless_right = holds(r.k1_right_per_nu0);
    r.transparent = holds(r.k1_transparent_per_nu0);
    r.invisible = std::abs(n0 - 1.0) <= 1e-12 && std::abs(k1) <= tol;
    if (r.invisible) r.epsilon = K > 0 ? -1 : 1;
    return r;
  }

  const double root = std::sqrt(2.0 * n2 - 1.0);
  r.K_left = {(1.0 + root) * k0, (1.0 - root) * k0};
  r.K_right = {(-1.0 + root) * k0, (-1.0 - root) * k0};
  if (rational) {
    const double t = std::sqrt(2.0 * (n2 + 1.0)) * k0;
    r.K_transparent = {t, -t};
  }
  auto hits = [K](const std::vector<double>& ks) {
    return std::any_of(ks.begin(), ks.end(), [K](double c) {
      return std::abs(c - K) <= 1e-9 * std::max(std::abs(c), std::abs(K));
    });
  };
  const bool k1_zero = std::abs(spec.k1) <= 1e-12 * k0;
  r.reflectionless_left = k1_zero && hits(r.K_left);
  r.reflectionless_right = k1_zero && hits(r.K_right);
  r.transparent = k1_zero && hits(r.K_transparent);
  return r;
}

double bidirectional_k1(const IndexProfile& profile, const ResonanceSpec& spec, double tol) {
  check_match(profile, spec, "bidirectional_k1");
  const double n0 = spec.n0;
  const double k0 = spec.k0;
  const double L = spec.length;
  const FourierTriple t = fourier_triple(profile, k0);

  const double norm = modulation_l1(profile, k0);
  if (std::abs(t.v_plus) > tol * norm || std::abs(t.v_minus) > tol * norm)
    throw ConditionsUnmet("bidirectional_k1: v+ or v- does not vanish at k0");

  const double denom = 2.0 * n0 * n0 * k0 * L;
  const cplx k1 = t.v_zero / denom;
  if (std::abs(k1.imag()) > tol * std::max(std::abs(k1.real()), norm / denom))
    throw ComplexK1("bidirectional_k1: the required k1 is not real");
  return k1.real();
}

ResonanceSpec theorem5_partner_spec(const IndexProfile& seed, const ResonanceSpec& spec,
                                    double alpha, double n0_check) {
  check_match(seed, spec, "theorem5_partner_spec");
  const int m0 = spec.m0;
  const double L = spec.length;
  const int j_check = static_cast<int>(std::lround(0.5 * m0 * (1.0 + 1.0 / n0_check)));
  if (!(m0 < 2 * j_check && 2 * j_check <= 2 * m0) ||
      std::abs(rational_index(m0, j_check) - n0_check) > 1e-9)
    throw InvalidRationalIndex("theorem5_partner_spec: n0_check is not m0 / (2 j - m0)");
  const double nn = n0_check * n0_check;
  const double q = 2.0 * std::numbers::pi * m0 / L;
  const cplx bracket = (nn - 1.0) * fourier_nu(seed, q) + (nn + 1.0) * fourier_nu(seed, 0.0);
  const double k1 = (-std::numbers::pi * m0 * alpha / (nn * (nn + 1.0) * L * L) * bracket).real();
  return make_resonance(m0, j_check, n0_check, L, k1);
}

}  // namespace invis
