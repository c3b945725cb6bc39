#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "invis/profiles.hpp"
#include "invis/transfer.hpp"

namespace invis {

enum class Engine { exact, perturbative, both };

struct ScanOptions {
  double lambda_min_nm = 1400.0;
  double lambda_max_nm = 1600.0;
  std::size_t points = 2001;
  Engine engine = Engine::exact;
  int order = 1;                                         // perturbative N
  EvolveOptions evolve{};                                // exact engine; mode defaults to exact
  PotentialMode perturbative_mode = PotentialMode::linearized;
  std::size_t panels = 8192;
};

struct ScanPoint {
  double rl2 = 0.0;
  double rr2 = 0.0;
  double t_minus_1_sq = 0.0;
  double det_err = 0.0;
};

struct ScanRow {
  double lambda_nm = 0.0;
  double k_per_um = 0.0;
  std::optional<ScanPoint> exact;
  std::optional<ScanPoint> perturbative;
};

/// Wavelength grid lambda_min + i (lambda_max - lambda_min) / (points - 1).
/// Throws RangeViolation unless lambda_min < lambda_max and points >= 2.
std::vector<double> wavelength_grid(const ScanOptions& options);

/// Rows over the grid in ascending wavelength, computed with OpenMP.
std::vector<ScanRow> scan_parallel(const IndexProfile& profile, const ScanOptions& options);

/// Reference implementation: the same rows computed one after another.
std::vector<ScanRow> scan_serial(const IndexProfile& profile, const ScanOptions& options);

/// lambda_nm,k_per_um,Rl2,Rr2,T_minus_1_sq,det_err for the exact engine, the
/// same columns suffixed _pN for the perturbative one. With engine
/// perturbative alone, its values fill the unsuffixed columns.
void write_csv(std::ostream& out, const std::vector<ScanRow>& rows, const ScanOptions& options);

}  // namespace invis
