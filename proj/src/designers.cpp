#include <cmath>
#include <numbers>
#include <sstream>

#include "invis/errors.hpp"
#include "invis/invisibility.hpp"

namespace invis {

namespace {

void require_design_point(const ResonanceSpec& spec, const char* who) {
  if (!spec.j0) throw InvalidResonance(std::string(who) + ": spec needs j0 (rational n0)");
  if (spec.k1 != 0.0) throw InvalidResonance(std::string(who) + ": spec must have k1 = 0");
}

// Index amplitude whose linearized potential at k0 is z e^{iKx}.
cplx index_amplitude(cplx z, const ResonanceSpec& spec) {
  return z / (-2.0 * spec.n0 * spec.k0 * spec.k0);
}

}  // namespace

double bidirectional_frequency(const ResonanceSpec& spec) {
  return std::sqrt(2.0 * (spec.n0 * spec.n0 + 1.0)) * spec.k0;
}

TwoExponentialDesign design_two_exponential(const ResonanceSpec& spec, double K1, cplx z1,
                                            Direction direction) {
  require_design_point(spec, "design_two_exponential");
  const double n0 = spec.n0;
  const double k0 = spec.k0;
  const double L = spec.length;
  const double e = direction == Direction::left ? 1.0 : -1.0;
  const double kk = e * k0;

  if (std::abs(K1) <= 1e-12 * k0) throw DegenerateFrequency("K1 must be nonzero");
  if (std::abs(K1 - 2.0 * kk) < 1e-6 * k0) {
    std::ostringstream msg;
    msg << "K1 = " << K1 << " is too close to " << 2.0 * kk << " (2 k0 for this direction)";
    throw DegenerateFrequency(msg.str());
  }
  const double kb = bidirectional_frequency(spec);
  if (std::abs(std::abs(K1) - kb) <= 1e-6 * kb) {
    std::ostringstream msg;
    msg << "K1 = " << K1 << " lies on the bidirectional locus +-" << kb;
    throw BidirectionalLocus(msg.str());
  }

  const double K2 = 2.0 * kk - 2.0 * (n0 * n0 - 1.0) * k0 * k0 / (K1 - 2.0 * kk);
  if (std::abs(K2) <= 1e-12 * k0) throw DegenerateFrequency("K2 vanishes");

  auto F = [L](double K) { return (1.0 - std::polar(1.0, K * L)) / K; };
  auto G = [n0, kk](double K) -> cplx {
    const double den = K - 2.0 * n0 * kk;
    if (std::abs(den) <= 1e-12 * std::abs(kk))
      throw DegenerateFrequency("K coincides with 2 n0 k0 for this direction");
    return (K - (1.0 + n0) * kk) / den;
  };
  const cplx F1 = F(K1);
  const cplx F2 = F(K2);
  if (std::abs(F1) <= 1e-12 * L || std::abs(F2) <= 1e-12 * L)
    throw DegenerateFrequency("K1 or K2 is an integer multiple of 2 pi / L");
  const cplx G1 = G(K1);
  const cplx G2 = G(K2);
  if (std::abs(G2) <= 1e-12) throw DegenerateFrequency("G(K2) vanishes");

  const cplx z2 = -F1 * G1 * z1 / (F2 * G2);
  IndexProfile profile(n0, L,
                       {Exponential{index_amplitude(z1, spec), K1},
                        Exponential{index_amplitude(z2, spec), K2}});
  return {std::move(profile), K2, z1, z2};
}

IndexProfile design_bidirectional_sinusoid(const ResonanceSpec& spec, cplx z) {
  require_design_point(spec, "design_bidirectional_sinusoid");
  if (z == cplx{}) throw RangeViolation("design_bidirectional_sinusoid: z must be nonzero");
  const double K1 = bidirectional_frequency(spec);
  const double L = spec.length;
  // i z sin(K1 (x - L/2)) = (z/2) e^{-i K1 L/2} e^{i K1 x} - (z/2) e^{i K1 L/2} e^{-i K1 x}
  const cplx a = 0.5 * z * std::polar(1.0, -0.5 * K1 * L);
  const cplx b = -0.5 * z * std::polar(1.0, 0.5 * K1 * L);
  return IndexProfile(spec.n0, L,
                      {Exponential{index_amplitude(a, spec), K1},
                       Exponential{index_amplitude(b, spec), -K1}});
}

}  // namespace invis
