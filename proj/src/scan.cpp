#include "invis/scan.hpp"

#include <cstdio>
#include <exception>
#include <string>

#include "invis/errors.hpp"
#include "invis/perturbation.hpp"
#include "invis/resonance.hpp"

namespace invis {

namespace {

ScanPoint point_of(const TransferMatrix& m) {
  const Scattering s = scattering_of(m);
  return {s.rl2(), s.rr2(), s.t_minus_1_sq(), det_residual(m)};
}

ScanRow evaluate(const IndexProfile& profile, const ScanOptions& options, double lambda_nm) {
  ScanRow row;
  row.lambda_nm = lambda_nm;
  row.k_per_um = wavenumber_per_um(lambda_nm);
  if (options.engine != Engine::perturbative)
    row.exact = point_of(evolve_exact(profile, row.k_per_um, options.evolve));
  if (options.engine != Engine::exact)
    row.perturbative = point_of(truncated_transfer(profile, row.k_per_um, options.order,
                                                   options.panels, options.perturbative_mode));
  return row;
}

void append_point(std::string& line, const ScanPoint& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%.12e,%.12e,%.12e,%.12e", p.rl2, p.rr2, p.t_minus_1_sq,
                p.det_err);
  line += buf;
}

}  // namespace

std::vector<double> wavelength_grid(const ScanOptions& options) {
  if (!(options.lambda_min_nm < options.lambda_max_nm) || !(options.lambda_min_nm > 0.0))
    throw RangeViolation("scan: need 0 < lambda_min < lambda_max");
  if (options.points < 2) throw RangeViolation("scan: need at least two points");
  std::vector<double> grid(options.points);
  const double span = options.lambda_max_nm - options.lambda_min_nm;
  const double denom = static_cast<double>(options.points - 1);
  for (std::size_t i = 0; i < options.points; ++i)
    grid[i] = options.lambda_min_nm + span * static_cast<double>(i) / denom;
  return grid;
}

std::vector<ScanRow> scan_serial(const IndexProfile& profile, const ScanOptions& options) {
  const auto grid = wavelength_grid(options);
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double lambda : grid) rows.push_back(evaluate(profile, options, lambda));
  return rows;
}

std::vector<ScanRow> scan_parallel(const IndexProfile& profile, const ScanOptions& options) {
  const auto grid = wavelength_grid(options);
  const auto n = static_cast<long>(grid.size());
  std::vector<ScanRow> rows(grid.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = evaluate(profile, options, grid[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(invis_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows, const ScanOptions& options) {
  const std::string cols = "Rl2,Rr2,T_minus_1_sq,det_err";
  const std::string suffix = "_p" + std::to_string(options.order);
  std::string header = "lambda_nm,k_per_um,";
  if (options.engine == Engine::both) {
    header += cols;
    for (const char* c : {"Rl2", "Rr2", "T_minus_1_sq", "det_err"})
      header += "," + std::string(c) + suffix;
  } else {
    header += cols;
  }
  out << header << '\n';

  for (const auto& row : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f,%.12e", row.lambda_nm, row.k_per_um);
    std::string line = buf;
    if (row.exact) append_point(line, *row.exact);
    if (row.perturbative) append_point(line, *row.perturbative);
    out << line << '\n';
  }
}

}  // namespace invis
