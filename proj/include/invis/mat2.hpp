#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace invis {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

// Dense 2x2 complex matrix. Used for transfer matrices, their perturbative
// increments and the interaction-picture kernels.
struct Mat2 {
  cplx m11{}, m12{}, m21{}, m22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }

  cplx det() const { return m11 * m22 - m12 * m21; }
  cplx trace() const { return m11 + m22; }

  Mat2 inverse() const {
    const cplx d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
  }

  double max_abs() const {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
  }

  Mat2& operator+=(const Mat2& o) {
    m11 += o.m11; m12 += o.m12; m21 += o.m21; m22 += o.m22;
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    m11 -= o.m11; m12 -= o.m12; m21 -= o.m21; m22 -= o.m22;
    return *this;
  }
  Mat2& operator*=(cplx s) {
    m11 *= s; m12 *= s; m21 *= s; m22 *= s;
    return *this;
  }
};

inline Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
inline Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
inline Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
inline Mat2 operator*(cplx s, Mat2 a) { return a *= s; }

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

// D(theta) = diag(e^{-i theta}, e^{i theta}): maps the asymptotic
// coefficients of a wave to those of the same wave translated by theta/k.
inline Mat2 translation(double theta) {
  return {std::polar(1.0, -theta), 0.0, 0.0, std::polar(1.0, theta)};
}

}  // namespace invis
