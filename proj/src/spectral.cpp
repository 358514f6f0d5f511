#include "dwl/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "dwl/errors.hpp"

namespace dwl::spectral {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

namespace {

Eigen::VectorXcd transform(const Eigen::VectorXcd& in, int direction) {
  const int n = static_cast<int>(in.size());
  Eigen::VectorXcd src = in;
  Eigen::VectorXcd out(n);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(src.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), direction, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

void check_grid(int n, double length) {
  require(n >= 2 && n % 2 == 0, ErrorKind::usage, "spectral grids need an even number of points");
  require(length > 0, ErrorKind::usage, "grid length must be positive");
}

}  // namespace

std::string to_string(Sector s) { return s == Sector::periodic ? "periodic" : "antiperiodic"; }

Sector sector_from_string(const std::string& s) {
  if (s == "periodic") return Sector::periodic;
  if (s == "antiperiodic") return Sector::antiperiodic;
  fail(ErrorKind::usage, "unknown sector '" + s + "' (expected periodic|antiperiodic)");
}

Eigen::VectorXcd fft(const Eigen::VectorXcd& f) { return transform(f, FFTW_FORWARD); }

Eigen::VectorXcd ifft(const Eigen::VectorXcd& f) {
  return transform(f, FFTW_BACKWARD) / static_cast<double>(f.size());
}

Eigen::VectorXd wavenumbers(int n, double length, Sector sector) {
  check_grid(n, length);
  const double shift = sector == Sector::antiperiodic ? 0.5 : 0.0;
  Eigen::VectorXd k(n);
  for (int j = 0; j < n; ++j) {
    const int m = j < n / 2 ? j : j - n;
    k[j] = 2.0 * std::numbers::pi * (m + shift) / length;
  }
  return k;
}

Eigen::VectorXcd symbol(int n, double length, Sector sector, int order) {
  require(order >= 0, ErrorKind::usage, "derivative order must be nonnegative");
  const Eigen::VectorXd k = wavenumbers(n, length, sector);
  Eigen::VectorXcd s(n);
  for (int j = 0; j < n; ++j) s[j] = std::pow(Complex(0, k[j]), order);
  if (sector == Sector::periodic && order % 2 == 1) s[n / 2] = 0;
  return s;
}

Eigen::MatrixXd fourier_matrix(int n, double length, Sector sector, int order) {
  const Eigen::VectorXcd s = symbol(n, length, sector, order);
  // c(d) = (1/N) sum_m s_m exp(i k_m d h); the half-integer shift factors out
  // as exp(i pi d / N).
  const Eigen::VectorXcd base = ifft(s);
  const double shift = sector == Sector::antiperiodic ? 0.5 : 0.0;
  Eigen::VectorXd c(n);
  for (int d = 0; d < n; ++d) {
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * shift * d / n);
    c[d] = (phase * base[d]).real();
  }
  const double wrap = sector == Sector::antiperiodic ? -1.0 : 1.0;
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) m(j, l) = j >= l ? c[j - l] : wrap * c[j - l + n];
  return m;
}

Eigen::VectorXcd derivative(const Eigen::VectorXcd& f, double length, Sector sector, int order) {
  const int n = static_cast<int>(f.size());
  check_grid(n, length);
  Eigen::VectorXcd g = f;
  if (sector == Sector::antiperiodic)
    for (int j = 0; j < n; ++j) g[j] *= std::polar(1.0, -std::numbers::pi * j / n);
  Eigen::VectorXcd hat = fft(g);
  // In the demodulated frame the symbol uses the shifted wavenumbers directly.
  hat = hat.cwiseProduct(symbol(n, length, sector, order));
  Eigen::VectorXcd out = ifft(hat);
  if (sector == Sector::antiperiodic)
    for (int j = 0; j < n; ++j) out[j] *= std::polar(1.0, std::numbers::pi * j / n);
  return out;
}

Eigen::VectorXd derivative(const Eigen::VectorXd& f, double length, int order) {
  return derivative(Eigen::VectorXcd(f.cast<Complex>()), length, Sector::periodic, order).real();
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
  // Fornberg, "Generation of finite difference formulas on arbitrarily spaced grids".
  const int n = static_cast<int>(nodes.size());
  require(order >= 0 && order < n, ErrorKind::usage, "fd_weights: need more nodes than the derivative order");
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

namespace {

struct Stencil {
  std::vector<int> offsets;  // relative node indices (may wrap for periodic grids)
  std::vector<double> weights;
};

Stencil stencil_at(int j, int n, double h, int order, Boundary boundary) {
  const int half = order <= 2 ? 1 : 2;
  Stencil st;
  int first = j - half;
  int count = 2 * half + 1;
  if (boundary == Boundary::open && (j - half < 0 || j + half >= n)) {
    count = order + 2;
    first = j - half < 0 ? 0 : n - count;
  }
  std::vector<double> x;
  for (int i = 0; i < count; ++i) {
    st.offsets.push_back(first + i);
    x.push_back((first + i - j) * h);
  }
  st.weights = fd_weights(0.0, x, order);
  return st;
}

}  // namespace

Eigen::MatrixXd fd_matrix(int n, double h, int order, Boundary boundary) {
  require(n >= order + 2 && n >= 5, ErrorKind::usage, "fd_matrix: grid too small");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const Stencil st = stencil_at(j, n, h, order, boundary);
    for (std::size_t q = 0; q < st.offsets.size(); ++q) {
      int col = st.offsets[q];
      double sign = 1.0;
      if (col < 0 || col >= n) {
        sign = boundary == Boundary::antiperiodic ? -1.0 : 1.0;
        col = (col + n) % n;
      }
      m(j, col) += sign * st.weights[q];
    }
  }
  return m;
}

Eigen::VectorXd fd_derivative(const Eigen::VectorXd& f, double h, int order, Boundary boundary) {
  const int n = static_cast<int>(f.size());
  require(n >= order + 2 && n >= 5, ErrorKind::usage, "fd_derivative: grid too small");
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    const Stencil st = stencil_at(j, n, h, order, boundary);
    double acc = 0;
    for (std::size_t q = 0; q < st.offsets.size(); ++q) {
      int col = st.offsets[q];
      double sign = 1.0;
      if (col < 0 || col >= n) {
        sign = boundary == Boundary::antiperiodic ? -1.0 : 1.0;
        col = (col + n) % n;
      }
      acc += sign * st.weights[q] * f[col];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace dwl::spectral
