// Serial vs OpenMP wavelength scan on the bidirectional sinusoid slab.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "invis/invisibility.hpp"
#include "invis/scan.hpp"

int main(int argc, char** argv) {
  using namespace invis;
  using clock = std::chrono::steady_clock;

  const std::size_t points = argc > 1 ? static_cast<std::size_t>(std::atol(argv[1])) : 401;
  const ResonanceSpec spec = make_resonance(51, 33, 3.4, 11.25);
  const IndexProfile profile = design_bidirectional_sinusoid(spec, 0.05 * spec.k0 * spec.k0);

  ScanOptions opts;
  opts.points = points;

  auto t0 = clock::now();
  const auto serial = scan_serial(profile, opts);
  auto t1 = clock::now();
  const auto parallel = scan_parallel(profile, opts);
  auto t2 = clock::now();

  double diff = 0.0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const auto& a = *serial[i].exact;
    const auto& b = *parallel[i].exact;
    diff = std::max({diff, std::abs(a.rl2 - b.rl2), std::abs(a.rr2 - b.rr2),
                     std::abs(a.t_minus_1_sq - b.t_minus_1_sq)});
  }
  const double ts = std::chrono::duration<double>(t1 - t0).count();
  const double tp = std::chrono::duration<double>(t2 - t1).count();
  std::printf("points %zu threads %d\n", points, omp_get_max_threads());
  std::printf("serial   %.3f s\nparallel %.3f s\nspeedup  %.2fx\nmax row difference %.3e\n", ts, tp,
              ts / tp, diff);
  return diff <= 1e-12 ? 0 : 1;
}
