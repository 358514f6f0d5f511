#pragma once

// Conformally parametrized surfaces in E^3 and E^4 on uniform grids.
// Complex coordinate z = u + i v, d = (d_u - i d_v) / 2, dbar = (d_u + i d_v) / 2,
// induced metric rho (du^2 + dv^2).

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dwl/spectral.hpp"

namespace dwl::surface {

using Complex = std::complex<double>;
using Point = Eigen::Vector4d;  // E^3 surfaces keep the last entry zero

// Uniform Nu x Nv grid. Periodic directions sample [0, L) with step L / N;
// open directions sample [0, L] with step L / (N - 1). Node (i, j) has index
// i * Nv + j, i along u.
struct Grid2D {
  int nu = 0, nv = 0;
  double lu = 0, lv = 0;
  std::array<bool, 2> periodic{true, true};

  int size() const { return nu * nv; }
  int index(int i, int j) const { return i * nv + j; }
  double du() const { return periodic[0] ? lu / nu : lu / (nu - 1); }
  double dv() const { return periodic[1] ? lv / nv : lv / (nv - 1); }
  bool doubly_periodic() const { return periodic[0] && periodic[1]; }
  void validate() const;
};

// First / second derivative of a node field along axis 0 (u) or 1 (v):
// spectral in periodic directions, second-order differences in open ones.
Eigen::VectorXd grid_derivative(const Grid2D& g, const Eigen::VectorXd& f, int axis, int order = 1);
Eigen::VectorXcd grid_derivative(const Grid2D& g, const Eigen::VectorXcd& f, int axis, int order = 1);

// Dense derivative matrix along one axis (periodic axes take a sector).
Eigen::MatrixXd grid_derivative_matrix(const Grid2D& g, int axis, spectral::Sector sector, int order = 1);

struct ConformalGrid {
  Grid2D grid;
  int ambient = 3;
  std::vector<Point> points;
  // X(u + Lu, v) = X(u, v) + period_shift[0], likewise for v; lets cylinders
  // use spectral derivatives.
  std::array<Point, 2> period_shift{Point::Zero(), Point::Zero()};

  void validate() const;
};

struct ConformalFactor {
  Eigen::VectorXd rho;
  double residual = 0;
  int worst_node = 0;
};

inline constexpr double kConformalTolerance = 1e-6;

// rho = |X_u|^2; throws a numerical error naming the worst node if the
// conformality residual reaches `tol`.
ConformalFactor conformal_factor(const ConformalGrid& s, double tol = kConformalTolerance);

struct CurvatureField {
  Grid2D grid;
  int ambient = 3;
  Eigen::VectorXd rho;
  double conformal_residual = 0;
  Eigen::VectorXd h;         // E^3 scalar mean curvature
  Eigen::VectorXd h1, h2;    // E^4 normal components
  Eigen::VectorXcd hc;       // h1 + i h2 (E^3: h)
  Eigen::VectorXd p;         // rho^{1/2} h / 2 (E^4: rho^{1/2} h1 / 2)
  Eigen::VectorXcd pc;       // rho^{1/2} hc / 2
  std::vector<Point> n1, n2; // unit normals (E^3: n1 only)

  Eigen::VectorXd mean_curvature_norm_squared() const;
};

// Mean curvature vector Hvec = (X_uu + X_vv) / (2 rho); scalar components are
// H_a = -Hvec . n_a so the outward-normal cylinder has H = +1/2. In E^4 the
// normal frame is seeded from (e4, then e3 / e2 / e1), carried by projection
// from node to node, and oriented so det(T1, T2, n1, n2) > 0;
// `swap_orientation` negates n2.
CurvatureField mean_curvature(const ConformalGrid& s, bool swap_orientation = false);

struct ComplexMeanCurvature {
  Eigen::VectorXcd hc;
  Eigen::VectorXcd pc;
};

ComplexMeanCurvature complex_mean_curvature(const CurvatureField& f);

// gamma[a][b][c] = Gamma^a_{bc} per node (0 = u, 1 = v).
struct ConnectionField {
  Grid2D grid;
  std::array<std::array<std::array<Eigen::VectorXd, 2>, 2>, 2> gamma;
  std::array<std::vector<Eigen::MatrixXcd>, 2> omega;  // spin connection per node
};

ConnectionField christoffel_conformal(const Grid2D& g, const Eigen::VectorXd& rho);

// Frame Clifford images used for the intrinsic operator and the spin
// connection: E^3 (i sigma_2, -i sigma_1); E^4 sigma_1 (x) sigma_a.
std::array<Eigen::MatrixXcd, 2> frame_gammas(int ambient);

// omega_a = -1/4 rho^{-1} sum_{b,c} sigma^{bc} (d_b rho delta_{ac} - d_c rho delta_{ab})
// with sigma^{bc} = (1/2) gamma_b gamma_c for b != c and the gammas above.
ConnectionField spin_connection_conformal(const Grid2D& g, const Eigen::VectorXd& rho, int ambient = 3);

// g^{-1/4} d_axis g^{1/4} as a dense matrix; with g = rho^2 this is
// rho^{-1/2} d rho^{1/2}.
Eigen::MatrixXd anti_self_adjoint_factor_metric(const Grid2D& g, const Eigen::VectorXd& metric_det, int axis,
                                                spectral::Sector sector = spectral::Sector::periodic);
Eigen::MatrixXd anti_self_adjoint_factor(const Grid2D& g, const Eigen::VectorXd& rho, int axis,
                                         spectral::Sector sector = spectral::Sector::periodic);

struct WillmoreArea {
  double willmore = 0;
  double area = 0;
};

WillmoreArea willmore_area(const CurvatureField& f);

struct GaussBonnet {
  int chi = 0;
  double raw = 0;
  double residual = 0;
};

GaussBonnet gauss_bonnet(const Grid2D& g, const Eigen::VectorXd& rho);

struct SurfaceSpinor {
  Eigen::VectorXcd psi1;  // continuous sqrt(dZ)
  Eigen::VectorXcd psi2;  // continuous sqrt(-dZ)
  Eigen::VectorXcd dz;    // dZ, Z = X1 + i X2
  Eigen::VectorXcd dzbar; // d(conj Z)
  Eigen::VectorXcd dx3;   // d X3
  std::array<spectral::Sector, 2> sector{spectral::Sector::periodic, spectral::Sector::periodic};
};

SurfaceSpinor weierstrass_spinor_surface(const ConformalGrid& s);

// Square root of a node field continued smoothly over a doubly periodic grid;
// returns the sector of the result along each axis.
std::array<spectral::Sector, 2> branch_sqrt(const Grid2D& g, const Eigen::VectorXcd& z, Eigen::VectorXcd& out);

ConformalGrid transformed(const ConformalGrid& s, const Eigen::Matrix4d& rotation, const Point& shift, double scale = 1);

namespace generators {
// (R cos u, R sin u, R v), u in [0, 2 pi), v in [0, lv) periodic up to translation.
ConformalGrid cylinder(double radius, int nu, int nv, double lv = 2 * 3.141592653589793);
// (cos u, sin u, cos v, sin v) * scale / sqrt 2 on [0, 2 pi)^2.
ConformalGrid clifford_torus(int nu, int nv, double scale = 1.0);
// Torus of revolution with the meridian angle phi(v) solving r phi' = R + r cos phi.
ConformalGrid torus_of_revolution(double big_r, double small_r, int nu, int nv);
}  // namespace generators

// Closed-form Willmore energy of the torus of revolution: pi^2 c^2 / sqrt(c^2 - 1), c = R / r.
double torus_willmore_closed_form(double big_r, double small_r);

}  // namespace dwl::surface
