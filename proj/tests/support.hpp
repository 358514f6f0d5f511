#pragma once

// Seeded generators shared by the property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "dwl/clifford.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline Rng rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform(Rng& r, double a = -1.0, double b = 1.0) {
  return std::uniform_real_distribution<double>(a, b)(r);
}

inline int uniform_int(Rng& r, int a, int b) { return std::uniform_int_distribution<int>(a, b)(r); }

// Random multivector with `terms` blades and coefficients in [-1, 1].
inline dwl::clifford::MultiVector random_mv(Rng& r, int dim, int terms = 6) {
  dwl::clifford::MultiVector m(dim);
  for (int t = 0; t < terms; ++t)
    m.add(dwl::clifford::Blade{static_cast<std::uint32_t>(uniform_int(r, 0, (1 << dim) - 1))}, uniform(r));
  return m;
}

inline Eigen::VectorXd random_unit(Rng& r, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = std::normal_distribution<double>()(r);
  return v.normalized();
}

// Product of an even number of unit vectors.
inline dwl::clifford::MultiVector random_spin(Rng& r, int dim, int pairs = 2) {
  dwl::clifford::MultiVector g = dwl::clifford::MultiVector::scalar(dim, 1.0);
  for (int k = 0; k < 2 * pairs; ++k) g = g * dwl::clifford::vector_from(random_unit(r, dim));
  return g;
}

inline Eigen::MatrixXd random_antisymmetric(Rng& r, int n, double scale = 1.0) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = uniform(r) * scale;
  return a - a.transpose();
}

// Samples of a random trigonometric polynomial over one period, amplitudes ~ 1/m.
inline Eigen::VectorXd random_smooth(Rng& r, int n, int modes = 4, double mean = 0.0) {
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, mean);
  for (int m = 1; m <= modes; ++m) {
    const double a = uniform(r) / m, b = uniform(r) / m;
    for (int j = 0; j < n; ++j) {
      const double x = 2 * M_PI * m * j / n;
      f[j] += a * std::cos(x) + b * std::sin(x);
    }
  }
  return f;
}

}  // namespace testsupport
