#include "invis/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "invis/errors.hpp"
#include "overloaded.hpp"

namespace invis {

namespace {

using detail::Overloaded;

void validate_term(const ModulationTerm& term, double length) {
  std::visit(
      Overloaded{
          [](const Exponential& e) {
            if (!std::isfinite(e.K)) throw ProfileFormatError("exp term: K must be finite");
          },
          [](const ConstantShift&) {},
          [](const Polynomial&) {},
          [](const SinusoidPT& s) {
            if (s.m < 1) throw ProfileFormatError("sin_pt term: m must be a positive integer");
            if (!std::isfinite(s.nu0) || !std::isfinite(s.r))
              throw ProfileFormatError("sin_pt term: nu0 and r must be finite");
          },
          [length](const Tabulated& t) {
            if (t.xs.size() != t.fs.size())
              throw ProfileFormatError("table term: xs and fs differ in length");
            if (t.xs.size() < 2) throw ProfileFormatError("table term: need at least two samples");
            const double slack = 1e-12 * length;
            if (t.xs.front() < -slack || t.xs.back() > length + slack)
              throw ProfileFormatError("table term: abscissae outside [0, L]");
            for (std::size_t i = 1; i < t.xs.size(); ++i) {
              if (!(t.xs[i] > t.xs[i - 1]))
                throw ProfileFormatError("table term: abscissae must be strictly increasing");
            }
          },
      },
      term);
}

bool is_integer(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

}  // namespace

IndexProfile::IndexProfile(cplx n0, double length, std::vector<ModulationTerm> terms, bool optical)
    : n0_(n0), length_(length), terms_(std::move(terms)), optical_(optical) {
  if (!(length_ > 0.0) || !std::isfinite(length_))
    throw ProfileFormatError("slab thickness L must be positive and finite");
  if (!std::isfinite(n0_.real()) || !std::isfinite(n0_.imag()))
    throw ProfileFormatError("n0 must be finite");
  if (optical_ && n0_.real() < 1.0)
    throw ProfileFormatError("optical profiles require Re(n0) >= 1");
  for (const auto& t : terms_) validate_term(t, length_);
}

cplx IndexProfile::modulation(double x) const {
  if (x < 0.0 || x > length_) return 0.0;
  cplx f = 0.0;
  for (const auto& t : terms_) f += eval_term(t, length_, x);
  return f;
}

cplx IndexProfile::potential_offset() const {
  cplx a = 0.0;
  for (const auto& t : terms_) {
    if (const auto* c = std::get_if<ConstantShift>(&t); c && c->potential_level) a += c->a;
  }
  return a;
}

bool IndexProfile::has_potential_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const ModulationTerm& t) {
    const auto* c = std::get_if<ConstantShift>(&t);
    return c && c->potential_level;
  });
}

IndexProfile IndexProfile::with_term(ModulationTerm term) const {
  auto terms = terms_;
  terms.push_back(std::move(term));
  return IndexProfile(n0_, length_, std::move(terms), optical_);
}

IndexProfile IndexProfile::with_terms(std::vector<ModulationTerm> terms) const {
  return IndexProfile(n0_, length_, std::move(terms), optical_);
}

IndexProfile IndexProfile::with_n0(cplx n0) const {
  return IndexProfile(n0, length_, terms_, optical_);
}

cplx eval_term(const ModulationTerm& term, double length, double x) {
  return std::visit(
      Overloaded{
          [x](const Exponential& e) { return e.z * std::polar(1.0, e.K * x); },
          [](const ConstantShift& c) { return c.potential_level ? cplx{} : c.a; },
          [x](const Polynomial& p) {
            cplx acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
          [x, length](const SinusoidPT& s) {
            const double arg = 2.0 * std::numbers::pi * s.m * x / length;
            return s.nu0 * cplx{std::cos(arg), s.r * std::sin(arg)};
          },
          [x](const Tabulated& t) -> cplx {
            if (x < t.xs.front() || x > t.xs.back()) return 0.0;
            auto hi = std::upper_bound(t.xs.begin(), t.xs.end(), x);
            if (hi == t.xs.end()) return t.fs.back();
            const auto i = static_cast<std::size_t>(hi - t.xs.begin());
            const double w = (x - t.xs[i - 1]) / (t.xs[i] - t.xs[i - 1]);
            return (1.0 - w) * t.fs[i - 1] + w * t.fs[i];
          },
      },
      term);
}

cplx eval_index(const IndexProfile& profile, double x) {
  if (x < 0.0 || x > profile.length()) return 1.0;
  return profile.n0() + profile.modulation(x);
}

cplx eval_potential(const IndexProfile& profile, double k, double x, PotentialMode mode) {
  if (x < 0.0 || x > profile.length()) return 0.0;
  const double k2 = k * k;
  const cplx n0 = profile.n0();
  const cplx f = profile.modulation(x);
  const cplx shift = profile.potential_offset();
  if (mode == PotentialMode::exact) {
    const cplx n = n0 + f;
    return k2 * (1.0 - n * n) + shift;
  }
  return k2 * (1.0 - n0 * n0) - 2.0 * k2 * n0 * f + shift;
}

double max_modulation(const IndexProfile& profile, int samples) {
  double best = 0.0;
  const double L = profile.length();
  for (int i = 0; i < samples; ++i) {
    const double x = L * i / (samples - 1);
    best = std::max(best, std::abs(profile.modulation(x)));
  }
  return best;
}

bool is_pt_symmetric(const IndexProfile& profile, double tol) {
  const cplx n0 = profile.n0();
  if (std::abs(n0.imag()) > tol * std::abs(n0)) return false;
  const cplx offset = profile.potential_offset();
  if (std::abs(offset.imag()) > tol * (1.0 + std::abs(offset))) return false;

  constexpr int kGrid = 1024;
  const double L = profile.length();
  double max_f = 0.0;
  double max_dev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = L * i / (kGrid - 1);
    const cplx f = profile.modulation(x);
    const cplx mirrored = std::conj(profile.modulation(L - x));
    max_f = std::max(max_f, std::abs(f));
    max_dev = std::max(max_dev, std::abs(mirrored - f));
  }
  return max_dev <= tol * (1.0 + max_f);
}

IndexProfile shifted(const IndexProfile& profile, double alpha) {
  if (alpha == 0.0) return profile;
  return profile.with_term(ConstantShift{alpha, true});
}

ModulationTerm conjugate_term(const ModulationTerm& term) {
  return std::visit(
      Overloaded{
          [](const Exponential& e) -> ModulationTerm { return Exponential{std::conj(e.z), -e.K}; },
          [](const ConstantShift& c) -> ModulationTerm {
            return ConstantShift{std::conj(c.a), c.potential_level};
          },
          [](const Polynomial& p) -> ModulationTerm {
            Polynomial out;
            for (const auto& c : p.coeffs) out.coeffs.push_back(std::conj(c));
            return out;
          },
          [](const SinusoidPT& s) -> ModulationTerm { return SinusoidPT{s.nu0, s.m, -s.r}; },
          [](const Tabulated& t) -> ModulationTerm {
            Tabulated out{t.xs, {}};
            for (const auto& f : t.fs) out.fs.push_back(std::conj(f));
            return out;
          },
      },
      term);
}

ModulationTerm scale_term(const ModulationTerm& term, double s) {
  return std::visit(
      Overloaded{
          [s](const Exponential& e) -> ModulationTerm { return Exponential{s * e.z, e.K}; },
          [s](const ConstantShift& c) -> ModulationTerm {
            return ConstantShift{s * c.a, c.potential_level};
          },
          [s](const Polynomial& p) -> ModulationTerm {
            Polynomial out;
            for (const auto& c : p.coeffs) out.coeffs.push_back(s * c);
            return out;
          },
          [s](const SinusoidPT& sp) -> ModulationTerm { return SinusoidPT{s * sp.nu0, sp.m, sp.r}; },
          [s](const Tabulated& t) -> ModulationTerm {
            Tabulated out{t.xs, {}};
            for (const auto& f : t.fs) out.fs.push_back(s * f);
            return out;
          },
      },
      term);
}

namespace {

// f' = a Re f + i b Im f applied to a single term, written as
// ((a + b)/2) f + ((a - b)/2) f^*.
std::vector<ModulationTerm> reweight_real_imag(const ModulationTerm& term, double length,
                                               double a, double b) {
  const double c_same = 0.5 * (a + b);
  const double c_conj = 0.5 * (a - b);
  std::vector<ModulationTerm> out;

  if (const auto* s = std::get_if<SinusoidPT>(&term)) {
    if (a == 0.0) throw Error("real-part scale must be nonzero");
    out.push_back(SinusoidPT{a * s->nu0, s->m, s->r * b / a});
    return out;
  }
  if (const auto* e = std::get_if<Exponential>(&term)) {
    const double m = e->K * length / (2.0 * std::numbers::pi);
    if (e->z.imag() == 0.0 && std::round(m) != 0.0 && is_integer(m, 1e-9)) {
      if (a == 0.0) throw Error("real-part scale must be nonzero");
      const int mi = static_cast<int>(std::lround(std::abs(m)));
      const double sign = m > 0 ? 1.0 : -1.0;
      out.push_back(SinusoidPT{a * e->z.real(), mi, sign * b / a});
      return out;
    }
    out.push_back(Exponential{c_same * e->z, e->K});
    if (c_conj != 0.0) out.push_back(Exponential{c_conj * std::conj(e->z), -e->K});
    return out;
  }
  if (const auto* c = std::get_if<ConstantShift>(&term)) {
    if (c->potential_level)
      throw Error("potential-level shifts have no index decomposition to rescale");
    out.push_back(ConstantShift{c_same * c->a + c_conj * std::conj(c->a), false});
    return out;
  }
  if (const auto* p = std::get_if<Polynomial>(&term)) {
    Polynomial q;
    for (const auto& c : p->coeffs) q.coeffs.push_back(c_same * c + c_conj * std::conj(c));
    out.push_back(std::move(q));
    return out;
  }
  const auto& t = std::get<Tabulated>(term);
  Tabulated q{t.xs, {}};
  for (const auto& f : t.fs) q.fs.push_back(c_same * f + c_conj * std::conj(f));
  out.push_back(std::move(q));
  return out;
}

void check_rational_baseline(double n, int m0, const char* what) {
  const double j = 0.5 * m0 * (1.0 + 1.0 / n);
  if (!is_integer(j, 1e-9)) {
    std::ostringstream msg;
    msg << what << " = " << n << " is not of the form (2 j / m0 - 1)^-1 for m0 = " << m0;
    throw InvalidRationalIndex(msg.str());
  }
}

}  // namespace

IndexProfile theorem5_partner(const IndexProfile& profile, double alpha, double n0_check,
                              std::optional<int> m0) {
  if (!is_pt_symmetric(profile)) throw NotPTSymmetric("seed profile is not PT-symmetric");
  const double n0 = profile.n0().real();
  if (!std::isfinite(n0_check) || n0_check < 1.0)
    throw InvalidRationalIndex("partner baseline index must be >= 1");
  if (n0 < 1.0) throw InvalidRationalIndex("seed baseline index must be >= 1");
  if (m0) {
    if (*m0 < 1) throw InvalidRationalIndex("m0 must be a positive integer");
    check_rational_baseline(n0, *m0, "seed n0");
    check_rational_baseline(n0_check, *m0, "partner n0");
  }
  if (alpha == 0.0) throw Error("partner scale alpha must be nonzero");

  const double kappa_scale =
      alpha * n0_check * (n0 * n0 + 1.0) / (n0 * (n0_check * n0_check + 1.0));
  std::vector<ModulationTerm> terms;
  for (const auto& t : profile.terms()) {
    auto mapped = reweight_real_imag(t, profile.length(), alpha, kappa_scale);
    for (auto& m : mapped) terms.push_back(std::move(m));
  }
  return IndexProfile(n0_check, profile.length(), std::move(terms), profile.optical());
}

std::optional<std::string> weak_modulation_warning(const IndexProfile& profile) {
  if (!profile.optical()) return std::nullopt;
  const double n0 = profile.n0().real();
  const double size = std::abs(profile.n0().imag()) + max_modulation(profile);
  if (size <= 1e-3 * n0) return std::nullopt;
  std::ostringstream msg;
  msg << "modulation |n0'| + max|f| = " << size
      << " is not three orders of magnitude below n0 = " << n0
      << "; first-order results may be inaccurate";
  return msg.str();
}

}  // namespace invis
