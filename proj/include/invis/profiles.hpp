#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invis/mat2.hpp"

namespace invis {

// Lengths are in micrometres, wavenumbers and spatial frequencies in 1/um.

/// z * exp(i K x) on [0, L].
struct Exponential {
  cplx z;
  double K = 0.0;
};

/// Constant on [0, L]. An index-level shift adds `a` to n(x); a
/// potential-level shift adds `a` (units 1/um^2) to v(x) directly and is
/// therefore independent of the wavenumber.
struct ConstantShift {
  cplx a;
  bool potential_level = false;
};

/// sum_j coeffs[j] * x^j on [0, L].
struct Polynomial {
  std::vector<cplx> coeffs;
};

/// nu0 * [cos(2 pi m x / L) + i r sin(2 pi m x / L)] on [0, L].
struct SinusoidPT {
  double nu0 = 0.0;
  int m = 1;
  double r = 1.0;
};

/// Piecewise-linear interpolation of (xs, fs); zero outside [xs.front(), xs.back()].
struct Tabulated {
  std::vector<double> xs;
  std::vector<cplx> fs;
};

using ModulationTerm = std::variant<Exponential, ConstantShift, Polynomial, SinusoidPT, Tabulated>;

enum class PotentialMode { exact, linearized };

/// Fourier data of the linearized perturbation at wavenumber k:
/// v_plus = v1~(+2 n0 k), v_minus = v1~(-2 n0 k), v_zero = v1~(0).
struct FourierTriple {
  cplx v_plus;
  cplx v_minus;
  cplx v_zero;
};

// Refractive index n(x) = n0 + f(x) for x in [0, L] and 1 elsewhere, with f
// the sum of the modulation terms. Immutable once constructed.
class IndexProfile {
 public:
  IndexProfile(cplx n0, double length, std::vector<ModulationTerm> terms = {},
               bool optical = true);

  cplx n0() const { return n0_; }
  double length() const { return length_; }
  bool optical() const { return optical_; }
  const std::vector<ModulationTerm>& terms() const { return terms_; }

  /// Index-level modulation f(x); zero outside [0, L].
  cplx modulation(double x) const;

  /// Sum of the potential-level constant shifts (1/um^2).
  cplx potential_offset() const;

  bool has_potential_terms() const;

  IndexProfile with_term(ModulationTerm term) const;
  IndexProfile with_terms(std::vector<ModulationTerm> terms) const;
  IndexProfile with_n0(cplx n0) const;

 private:
  cplx n0_;
  double length_;
  std::vector<ModulationTerm> terms_;
  bool optical_;
};

/// n(x): n0 + f(x) on [0, L], 1 outside. Potential-level shifts are not part
/// of the index and are ignored here.
cplx eval_index(const IndexProfile& profile, double x);

/// Exact: k^2 (1 - n(x)^2) + potential shifts. Linearized: v0 + v1(x) with
/// v0 = k^2 (1 - n0^2) and v1 = -2 k^2 n0 f(x) + potential shifts. Both
/// vanish outside [0, L].
cplx eval_potential(const IndexProfile& profile, double k, double x, PotentialMode mode);

/// Modulation value of a single term at x in [0, L] (no support check).
cplx eval_term(const ModulationTerm& term, double length, double x);

/// f~(q) = int_0^L exp(-i q x) f(x) dx over the index-level terms.
/// Throws QuadratureFailure when a tabulated term cannot reach tolerance.
cplx fourier_modulation(const IndexProfile& profile, double q);
cplx fourier_modulation(const IndexProfile& profile, cplx q);

/// Transform of a single term; potential-level shifts are included here
/// (their transform is the same integral of a constant).
cplx fourier_term(const ModulationTerm& term, double length, cplx q);

/// Transforms of nu = Re f and kappa = Im f at real frequency q.
cplx fourier_nu(const IndexProfile& profile, double q);
cplx fourier_kappa(const IndexProfile& profile, double q);

FourierTriple fourier_triple(const IndexProfile& profile, double k);

/// Same as fourier_triple without the k > 0 precondition; evaluating at -k
/// swaps v_plus and v_minus.
FourierTriple fourier_triple_signed(const IndexProfile& profile, double k);

/// PT symmetry v(L - x)^* = v(x), checked on a 1024-point grid.
bool is_pt_symmetric(const IndexProfile& profile, double tol = 1e-9);

/// Potential shift v -> v + alpha on [0, L] (stored as a potential-level
/// ConstantShift; alpha = 0 returns the profile unchanged).
IndexProfile shifted(const IndexProfile& profile, double alpha);

/// Partner profile with nu' = alpha nu and
/// kappa' = alpha n0' (n0^2 + 1) kappa / (n0 (n0'^2 + 1)), baseline n0'.
/// When m0 is given, both baselines must be of the form (2 j / m0 - 1)^-1
/// with integer j.
IndexProfile theorem5_partner(const IndexProfile& profile, double alpha, double n0_check,
                              std::optional<int> m0 = std::nullopt);

/// Complex conjugate of a term as a function of x.
ModulationTerm conjugate_term(const ModulationTerm& term);

/// Term multiplied by a real scalar.
ModulationTerm scale_term(const ModulationTerm& term, double s);

/// Largest |f(x)| on a uniform grid of `samples` points over [0, L].
double max_modulation(const IndexProfile& profile, int samples = 1024);

/// Diagnostic for optical profiles whose modulation is not small compared
/// with Re(n0); empty when the profile is within the weak-modulation regime.
std::optional<std::string> weak_modulation_warning(const IndexProfile& profile);

}  // namespace invis
