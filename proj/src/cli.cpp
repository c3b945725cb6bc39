#include "invis/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "invis/errors.hpp"
#include "invis/invisibility.hpp"
#include "invis/profile_io.hpp"
#include "invis/report_io.hpp"
#include "invis/scan.hpp"
#include "invis/transfer.hpp"

namespace invis {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json matrix_json(const Mat2& m) {
  auto c = [](cplx z) { return json::array({z.real(), z.imag()}); };
  return json::array({json::array({c(m.m11), c(m.m12)}), json::array({c(m.m21), c(m.m22)})});
}

json scattering_json(const Mat2& m) {
  const Scattering s = scattering_of(m);
  auto c = [](cplx z) { return json::array({z.real(), z.imag()}); };
  return json{{"r_left", c(s.r_left)},
              {"r_right", c(s.r_right)},
              {"t", c(s.t)},
              {"Rl2", s.rl2()},
              {"Rr2", s.rr2()},
              {"T_minus_1_sq", s.t_minus_1_sq()}};
}

std::optional<int> rational_j0(double n0, int m0) {
  const int j0 = static_cast<int>(std::lround(0.5 * m0 * (1.0 + 1.0 / n0)));
  if (!(m0 < 2 * j0 && 2 * j0 <= 2 * m0)) return std::nullopt;
  if (std::abs(rational_index(m0, j0) - n0) > 1e-9) return std::nullopt;
  return j0;
}

ResonanceSpec spec_from(int m0, int j0, double L) {
  return make_resonance(m0, j0, rational_index(m0, j0), L, 0.0);
}

const std::map<std::string, PotentialMode> kModes{{"exact", PotentialMode::exact},
                                                  {"linearized", PotentialMode::linearized}};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering and invisibility design for modulated optical slabs", "invis"};
  app.require_subcommand(1);

  // scan
  auto* scan = app.add_subcommand("scan", "Wavelength scan of |Rl|^2, |Rr|^2, |T-1|^2 to CSV");
  std::string scan_profile, scan_out, engine = "exact";
  ScanOptions so;
  scan->add_option("--profile", scan_profile, "Profile JSON")->required();
  scan->add_option("--lambda-min", so.lambda_min_nm, "Smallest wavelength (nm)")->required();
  scan->add_option("--lambda-max", so.lambda_max_nm, "Largest wavelength (nm)")->required();
  scan->add_option("--points", so.points, "Grid points (>= 2)")->required();
  scan->add_option("--engine", engine, "exact | perturbative | both")
      ->check(CLI::IsMember({"exact", "perturbative", "both"}));
  scan->add_option("--order", so.order, "Perturbative order N")->check(CLI::Range(0, 3));
  scan->add_option("--mode", so.evolve.mode, "Potential used by the exact engine")
      ->transform(CLI::CheckedTransformer(kModes));
  scan->add_option("--rtol", so.evolve.rtol, "Relative tolerance of the exact engine");
  scan->add_option("--atol", so.evolve.atol, "Absolute tolerance of the exact engine");
  scan->add_option("--out", scan_out, "CSV path (stdout when omitted)");

  // check
  auto* check = app.add_subcommand("check", "Invisibility residuals and verdict as JSON");
  std::string check_profile;
  int check_m0 = 0;
  std::optional<int> check_j0;
  double check_k1 = 0.0, check_tol = 1e-8;
  check->add_option("--profile", check_profile, "Profile JSON")->required();
  check->add_option("--m0", check_m0, "Resonance order m0")->required();
  check->add_option("--j0", check_j0, "Rational-index integer j0");
  check->add_option("--k1", check_k1, "Offset k1 (1/um)");
  check->add_option("--tol", check_tol, "Relative residual tolerance");

  // design
  auto* design = app.add_subcommand("design", "Synthesize an invisible profile");
  design->require_subcommand(1);
  int d_m0 = 0, d_j0 = 0;
  double d_L = 0.0;
  std::string d_out;

  auto* two = design->add_subcommand("two-exp", "Unidirectionally invisible exponential pair");
  double K1 = 0.0, z1_re = 0.0, z1_im = 0.0;
  std::string direction = "left";
  two->add_option("--m0", d_m0)->required();
  two->add_option("--j0", d_j0)->required();
  two->add_option("--L", d_L, "Slab thickness (um)")->required();
  two->add_option("--K1", K1, "First frequency (1/um)")->required();
  two->add_option("--z1-re", z1_re, "Re z1 in units of k0^2")->required();
  two->add_option("--z1-im", z1_im, "Im z1 in units of k0^2");
  two->add_option("--direction", direction)->check(CLI::IsMember({"left", "right"}));
  two->add_option("--out", d_out, "Profile JSON to write")->required();

  auto* bidir = design->add_subcommand("bidir-sin", "Bidirectional sinusoid");
  double z_re = 0.0, z_im = 0.0;
  bidir->add_option("--m0", d_m0)->required();
  bidir->add_option("--j0", d_j0)->required();
  bidir->add_option("--L", d_L, "Slab thickness (um)")->required();
  bidir->add_option("--z-re", z_re, "Re z in units of k0^2")->required();
  bidir->add_option("--z-im", z_im, "Im z in units of k0^2");
  bidir->add_option("--out", d_out, "Profile JSON to write")->required();

  auto* partner = design->add_subcommand("pt-partner", "PT partner with a new baseline index");
  std::string seed_path;
  double alpha = 1.0, n0_check = 1.0;
  partner->add_option("--profile", seed_path, "Seed profile JSON")->required();
  partner->add_option("--m0", d_m0)->required();
  partner->add_option("--alpha", alpha, "Scale of the real modulation");
  partner->add_option("--n0-check", n0_check, "Baseline index of the partner")->required();
  partner->add_option("--out", d_out, "Profile JSON to write")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Compare the exact engine with the slice product");
  std::string oracle_profile;
  double oracle_lambda = 0.0;
  std::size_t slices = 20000;
  PotentialMode oracle_mode = PotentialMode::exact;
  oracle->add_option("--profile", oracle_profile, "Profile JSON")->required();
  oracle->add_option("--lambda", oracle_lambda, "Wavelength (nm)")->required();
  oracle->add_option("--slices", slices, "Slices of the product oracle");
  oracle->add_option("--mode", oracle_mode)->transform(CLI::CheckedTransformer(kModes));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*scan) {
      so.engine = engine == "both" ? Engine::both
                  : engine == "perturbative" ? Engine::perturbative
                                             : Engine::exact;
      if (!(so.lambda_min_nm > 0.0) || !(so.lambda_min_nm < so.lambda_max_nm))
        throw UsageError("need 0 < --lambda-min < --lambda-max");
      if (so.points < 2) throw UsageError("--points must be at least 2");
      const IndexProfile profile = load_profile(scan_profile);
      const auto rows = scan_parallel(profile, so);
      if (scan_out.empty()) {
        write_csv(out, rows, so);
      } else {
        std::ofstream f(scan_out);
        if (!f) throw UsageError("cannot write " + scan_out);
        write_csv(f, rows, so);
      }
      return 0;
    }

    if (*check) {
      const IndexProfile profile = load_profile(check_profile);
      const ResonanceSpec spec =
          make_resonance(check_m0, check_j0, profile.n0().real(), profile.length(), check_k1);
      out << report_json(condition_residuals(profile, spec, check_tol));
      return 0;
    }

    if (*two) {
      const ResonanceSpec spec = spec_from(d_m0, d_j0, d_L);
      const double k02 = spec.k0 * spec.k0;
      const auto d = design_two_exponential(spec, K1, cplx{z1_re, z1_im} * k02,
                                            direction == "left" ? Direction::left : Direction::right);
      save_profile(d.profile, d_out);
      const cplx z2 = d.z2 / k02;
      out << json{{"K1_per_um", K1},
                  {"K2_per_um", d.K2},
                  {"z2_over_k0sq", json::array({z2.real(), z2.imag()})},
                  {"n0", spec.n0},
                  {"k0_per_um", spec.k0},
                  {"k1_per_um", spec.k1},
                  {"lambda_nm", spec.lambda_nm()},
                  {"direction", direction},
                  {"profile", d_out}}
                 .dump(2)
          << "\n";
      return 0;
    }

    if (*bidir) {
      const ResonanceSpec spec = spec_from(d_m0, d_j0, d_L);
      const IndexProfile p = design_bidirectional_sinusoid(spec, cplx{z_re, z_im} * spec.k0 * spec.k0);
      save_profile(p, d_out);
      out << json{{"K1_per_um", bidirectional_frequency(spec)},
                  {"n0", spec.n0},
                  {"k0_per_um", spec.k0},
                  {"k1_per_um", spec.k1},
                  {"lambda_nm", spec.lambda_nm()},
                  {"profile", d_out}}
                 .dump(2)
          << "\n";
      return 0;
    }

    if (*partner) {
      const IndexProfile seed = load_profile(seed_path);
      const double n_seed = seed.n0().real();
      const auto j_seed = rational_j0(n_seed, d_m0);
      if (!j_seed) throw InvalidRationalIndex("seed n0 is not of the form m0 / (2 j0 - m0)");
      const ResonanceSpec seed_spec = make_resonance(d_m0, j_seed, n_seed, seed.length(), 0.0);
      const IndexProfile p = theorem5_partner(seed, alpha, n0_check, d_m0);
      const ResonanceSpec spec = theorem5_partner_spec(seed, seed_spec, alpha, n0_check);
      save_profile(p, d_out);
      out << json{{"n0", spec.n0},
                  {"m0", spec.m0},
                  {"j0", *spec.j0},
                  {"k0_per_um", spec.k0},
                  {"k1_per_um", spec.k1},
                  {"k_per_um", spec.k()},
                  {"lambda_nm", spec.lambda_nm()},
                  {"profile", d_out}}
                 .dump(2)
          << "\n";
      return 0;
    }

    if (*oracle) {
      const IndexProfile profile = load_profile(oracle_profile);
      if (!(oracle_lambda > 0.0)) throw UsageError("--lambda must be positive");
      const double k = wavenumber_per_um(oracle_lambda);
      EvolveOptions opts;
      opts.mode = oracle_mode;
      const Mat2 exact = evolve_exact(profile, k, opts);
      const Mat2 sliced = slice_oracle(profile, k, slices, oracle_mode);
      out << json{{"lambda_nm", oracle_lambda},
                  {"k_per_um", k},
                  {"slices", slices},
                  {"exact", matrix_json(exact)},
                  {"slice", matrix_json(sliced)},
                  {"max_entry_difference", max_abs_diff(exact, sliced)},
                  {"det_err_exact", det_residual(exact)},
                  {"det_err_slice", det_residual(sliced)},
                  {"scattering_exact", scattering_json(exact)},
                  {"scattering_slice", scattering_json(sliced)}}
                 .dump(2)
          << "\n";
      return 0;
    }
  } catch (const ProfileFormatError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace invis
