#pragma once

// Differentiation on uniform grids: Fourier spectral matrices and transforms
// for periodic / antiperiodic sectors, and finite-difference stencils.

#include <complex>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dwl::spectral {

using Complex = std::complex<double>;

// Periodic: f(s + L) = f(s), integer wavenumbers.
// Antiperiodic: f(s + L) = -f(s), half-integer wavenumbers.
enum class Sector { periodic, antiperiodic };

// Open grids (no wrap) exist only for finite differences.
enum class Boundary { periodic, antiperiodic, open };

std::string to_string(Sector s);
Sector sector_from_string(const std::string& s);  // throws usage error
inline Boundary boundary_of(Sector s) { return s == Sector::periodic ? Boundary::periodic : Boundary::antiperiodic; }

// Wavenumbers in FFT order: 2 pi (m + shift) / L with m = 0..N/2-1, -N/2..-1
// and shift = 0 (periodic) or 1/2 (antiperiodic).
Eigen::VectorXd wavenumbers(int n, double length, Sector sector);

// Fourier symbol (i k)^order; for odd orders the periodic Nyquist mode is zeroed
// so the first-derivative matrix stays real and antisymmetric.
Eigen::VectorXcd symbol(int n, double length, Sector sector, int order);

// Dense real differentiation matrix, exact on the retained modes.
Eigen::MatrixXd fourier_matrix(int n, double length, Sector sector, int order = 1);

// Spectral derivative of sampled data. Antiperiodic data are handled by
// demodulating with exp(-i pi s / L).
Eigen::VectorXcd derivative(const Eigen::VectorXcd& f, double length, Sector sector, int order = 1);
Eigen::VectorXd derivative(const Eigen::VectorXd& f, double length, int order = 1);

// Forward / inverse DFT (unnormalized forward, 1/N on inverse).
Eigen::VectorXcd fft(const Eigen::VectorXcd& f);
Eigen::VectorXcd ifft(const Eigen::VectorXcd& f);

// FFTW planning is not thread-safe; every plan creation/destruction takes this.
std::mutex& fftw_planner_mutex();

// Finite-difference weights for d^order/dx^order at x0 from nodes (Fornberg).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

// Second-order accurate finite differences: centered in the interior,
// one-sided (order + 2 nodes) at open ends.
Eigen::MatrixXd fd_matrix(int n, double h, int order, Boundary boundary);
Eigen::VectorXd fd_derivative(const Eigen::VectorXd& f, double h, int order, Boundary boundary);

}  // namespace dwl::spectral
