#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "invis/errors.hpp"
#include "invis/transfer.hpp"
#include "oracles.hpp"

using namespace invis;
using std::numbers::pi;

TEST_CASE("bare barrier at a Fabry-Perot zero is +-identity up to the vacuum phase") {
  // n0 = 2, k L = pi m / n0 with m = 1: M = diag(-e^{-i tau}, -e^{i tau})
  const double tau = pi / 2.0;
  const Mat2 m = barrier_transfer(2.0, tau);
  CHECK(std::abs(m.m11 - (-std::polar(1.0, -tau))) < 1e-15);
  CHECK(std::abs(m.m22 - (-std::polar(1.0, tau))) < 1e-15);
  CHECK(std::abs(m.m12) < 1e-15);
  CHECK(std::abs(m.m21) < 1e-15);
}

TEST_CASE("barrier of unit index is the identity") {
  for (double tau : {0.0, 0.3, 7.0, 123.4}) {
    CHECK(max_abs_diff(barrier_transfer(1.0, tau), Mat2::identity()) < 1e-13);
  }
  CHECK(max_abs_diff(barrier_transfer(2.0, -1.0), Mat2::identity()) == 0.0);
}

TEST_CASE("barrier matches the second-order slab oracle and is even in the index") {
  for (cplx n0 : {cplx{3.4, 0.0}, cplx{1.5, 0.02}, cplx{0.3, -0.1}, cplx{1e-9, 0.0}}) {
    for (double k : {0.7, 2.0}) {
      const double L = 1.3;
      const Mat2 closed = barrier_transfer(n0, k * L);
      const Mat2 ref = oracle::slab_transfer(n0, k, L, 20000);
      CHECK(max_abs_diff(closed, ref) < 1e-9 * (1.0 + ref.max_abs()));
      CHECK(max_abs_diff(closed, barrier_transfer(-n0, k * L)) < 1e-13 * closed.max_abs());
      CHECK(std::abs(closed.det() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("evolution of a uniform slab reproduces the closed form") {
  for (double n0 : {1.5, 3.4}) {
    const double L = 2.0, k = 1.9;
    const IndexProfile p(n0, L);
    const Mat2 m = evolve_exact(p, k);
    CHECK(max_abs_diff(m, barrier_transfer(n0, k * L)) < 1e-8);
    CHECK(det_residual(m) < 1e-9);
  }
}

TEST_CASE("evolution of a vacuum interval is the identity with no rejected steps") {
  EvolveStats stats;
  const Mat2 m = evolve_exact(IndexProfile(1.0, 5.0), 2.0, {}, &stats);
  CHECK(max_abs_diff(m, Mat2::identity()) == 0.0);
  CHECK(stats.rejected == 0);
  CHECK(stats.accepted > 0);
  CHECK(max_abs_diff(evolve_potential([](double) { return cplx{1.0}; }, 2.0, 1.0, 1.0),
                     Mat2::identity()) == 0.0);
}

TEST_CASE("evolution agrees with the second-order oracle on modulated profiles") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const double L = 1.5 + 0.3 * trial, k = 0.8 + 0.25 * trial;
    const IndexProfile p(cplx{2.0, 0.01}, L, oracle::random_terms(rng, L, 0.1));
    const Mat2 m = evolve_exact(p, k);
    const Mat2 ref = oracle::schrodinger_transfer(
        [&](double x) { return eval_potential(p, k, x, PotentialMode::exact); }, k, L, 40000);
    CHECK(max_abs_diff(m, ref) < 2e-7 * ref.max_abs());
  }
}

TEST_CASE("slice oracle converges to the adaptive evolution at second order") {
  const double L = 6.0, k = pi * 8 / (2.0 * L);
  const IndexProfile p(2.0, L, {SinusoidPT{3e-3, 8, 0.8}, Exponential{cplx{0.0, 2e-3}, 3.0}});
  const Mat2 ref = evolve_exact(p, k);
  const double e1 = max_abs_diff(slice_oracle(p, k, 1000), ref);
  const double e2 = max_abs_diff(slice_oracle(p, k, 2000), ref);
  CHECK(e2 < 2e-6);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("slice oracle of a uniform slab is exact for any slice count") {
  const IndexProfile p(cplx{3.4, 0.001}, 11.25);
  const double k = 4.1;
  const Mat2 closed = barrier_transfer(p.n0(), k * p.length());
  CHECK(max_abs_diff(slice_oracle(p, k, 1), closed) < 1e-12);
  CHECK(max_abs_diff(slice_oracle(p, k, 777), closed) < 1e-11);
}

TEST_CASE("scattering amplitudes rebuild the matrix") {
  const IndexProfile p(3.4, 11.25, {Exponential{cplx{1e-4, 2e-4}, 20.994}});
  const double k = 4.2;
  const Mat2 m = evolve_exact(p, k);
  const Scattering s = scattering_of(m);
  // the rebuild assumes det M = 1, so M11 is off by exactly (det M - 1) / M22
  CHECK(max_abs_diff(s.rebuild(), m) <= det_residual(m) / std::abs(m.m22) * (1.0 + 1e-6) + 1e-14);
  CHECK(max_abs_diff(s.rebuild(), Mat2{m.m11 - (m.det() - 1.0) / m.m22, m.m12, m.m21, m.m22}) <
        1e-12);
  CHECK(s.rl2() == doctest::Approx(std::norm(m.m21 / m.m22)));
  CHECK(s.t_minus_1_sq() == doctest::Approx(std::norm(1.0 / m.m22 - 1.0)));
}

TEST_CASE("vanishing M22 is reported as a spectral singularity") {
  CHECK_THROWS_AS(scattering_of(Mat2{1.0, 1.0, 1.0, 0.0}), SpectralSingularity);
  CHECK_THROWS_AS(scattering_of(Mat2{1.0, 1.0, 1.0, 1e-16}), SpectralSingularity);
  CHECK_THROWS_AS(scattering_of(Mat2::zero()), SpectralSingularity);
  CHECK_NOTHROW(scattering_of(Mat2{1.0, 1.0, 1.0, 1e-10}));
}

TEST_CASE("lossless profiles conserve flux") {
  const IndexProfile p(2.0, 3.0, {SinusoidPT{0.02, 2, 0.0}, Polynomial{{0.0, 0.01}}});
  for (double k : {0.9, 1.7, 3.3}) {
    const Scattering s = scattering_of(evolve_exact(p, k));
    CHECK(s.rl2() + std::norm(s.t) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.rr2() + std::norm(s.t) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("determinant stays at one for complex potentials") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const double L = 3.0;
    const IndexProfile p(cplx{1.5, 0.05}, L, oracle::random_terms(rng, L, 0.1));
    CHECK(det_residual(evolve_exact(p, 2.0)) < 1e-8);
  }
}

TEST_CASE("linearized mode differs from exact mode at second order in the modulation") {
  const double L = 2.0, k = 1.6;
  double prev = 0.0;
  for (double zeta : {4e-2, 2e-2, 1e-2}) {
    const IndexProfile p(1.5, L, {ConstantShift{zeta}});
    EvolveOptions lin;
    lin.mode = PotentialMode::linearized;
    lin.rtol = 1e-12;
    EvolveOptions ex = lin;
    ex.mode = PotentialMode::exact;
    const double d = max_abs_diff(evolve_exact(p, k, ex), evolve_exact(p, k, lin));
    if (prev > 0.0) CHECK(prev / d == doctest::Approx(4.0).epsilon(0.05));
    prev = d;
  }
}

TEST_CASE("transfer matrices compose over adjacent intervals") {
  const double L = 4.0, k = 1.3;
  const IndexProfile p(2.0, L, {Exponential{cplx{0.01, 0.02}, 2.2}});
  const PotentialFn v = [&](double x) { return eval_potential(p, k, x, PotentialMode::exact); };
  EvolveOptions tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  const Mat2 whole = evolve_potential(v, k, 0.0, L, tight);
  const Mat2 left = evolve_potential(v, k, 0.0, 1.7, tight);
  const Mat2 right = evolve_potential(v, k, 1.7, L, tight);
  CHECK(max_abs_diff(right * left, whole) < 1e-10);
}

TEST_CASE("mirror image of the potential swaps the reflection amplitudes") {
  const double L = 3.0, k = 1.4;
  const IndexProfile p(2.0, L, {Exponential{cplx{0.01, 0.03}, 2.7}, Polynomial{{0.0, 0.01}}});
  const PotentialFn v = [&](double x) { return eval_potential(p, k, x, PotentialMode::exact); };
  const PotentialFn mirror = [&](double x) { return v(L - x); };
  const Scattering a = scattering_of(evolve_potential(v, k, 0.0, L));
  const Scattering b = scattering_of(evolve_potential(mirror, k, 0.0, L));
  // reflection from the right picks up the phase of the round trip across the slab
  CHECK(std::abs(b.t - a.t) < 1e-9);
  CHECK(std::abs(std::abs(b.r_left) - std::abs(a.r_right)) < 1e-9);
  CHECK(std::abs(std::abs(b.r_right) - std::abs(a.r_left)) < 1e-9);
}

TEST_CASE("evolution rejects bad input and reports budget exhaustion") {
  const IndexProfile p(2.0, 1.0);
  CHECK_THROWS_AS(evolve_exact(p, 0.0), RangeViolation);
  CHECK_THROWS_AS(slice_oracle(p, 1.0, 0), RangeViolation);
  EvolveOptions tiny;
  tiny.max_steps = 3;
  CHECK_THROWS_AS(evolve_exact(IndexProfile(2.0, 50.0), 5.0, tiny), IntegrationFailure);
  CHECK_THROWS_AS(
      evolve_potential([](double) { return cplx{std::nan(""), 0.0}; }, 1.0, 0.0, 1.0),
      IntegrationFailure);
}
