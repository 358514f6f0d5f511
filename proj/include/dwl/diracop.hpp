#pragma once

// Discrete Dirac operators on closed curves and conformal tori, with spectra
// and kernel diagnostics. Spinor vectors are stored component-major: entry
// c * N + k is component c at node k.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dwl/curvegeo.hpp"
#include "dwl/spectral.hpp"
#include "dwl/surfgeo.hpp"

namespace dwl::dirac {

using Complex = std::complex<double>;
using spectral::Sector;

// One sector per periodic grid direction (curves: 1, tori: 2).
struct SpinStructure {
  std::vector<Sector> sectors;
};

enum class Structure { anti_hermitian, hermitian, sigma3_hermitian, general };
std::string to_string(Structure s);

enum class CurveForm { canonical, intro };

// calibrated: [[p, d], [-dbar, p]]; printed: [[p, d], [dbar, p]].
enum class SurfaceConvention { calibrated, printed };

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  Structure structure = Structure::general;
  std::string convention;
  int components = 2;
  int nodes = 0;
  std::vector<Sector> sectors;
  double structure_residual = 0;
  // Hermitian-type core used for the structure check on surface operators:
  // core = rho^{3/4} (D / 2) rho^{-3/4}.
  Eigen::MatrixXcd core;
  // Orthonormal basis of the resolved modes (empty: the whole space). Periodic
  // sectors drop the Nyquist mode (on tori: line), where the real
  // first-derivative matrix vanishes and would fake extra low levels.
  Eigen::MatrixXd resolved;

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

inline constexpr double kStructureTolerance = 1e-12;
inline constexpr double kSurfaceStructureTolerance = 1e-10;
inline constexpr int kDenseLimit = 6000;
inline constexpr int kMaxInverseIterations = 500;

// canonical: [[d_s, kappa_C / 2], [-conj(kappa_C) / 2, d_s]] (anti-hermitian);
// intro: [[v, -i d_s], [-i d_s, v]] with v = k / 2 (hermitian).
// Plane curves use the signed curvature as kappa_C.
OperatorMatrix curve_dirac(const curve::CurvatureData& d, const SpinStructure& spin,
                           CurveForm form = CurveForm::canonical);

struct QuadraticIdentity {
  double residual = 0;      // || tr2(D^2) / 2 - (V^2 - P^2) ||
  double bound = 0;         // 1e-12 ||D||^2
  double potential_ratio = 0;  // (k^2 / 4) / (k^2 / 2) as realized by V^2
  bool holds() const { return residual <= bound; }
};

QuadraticIdentity quadratic_identity(const curve::CurvatureData& d, Sector sector = Sector::periodic);

// D = 2 rho^{-1} [[p, d], [-dbar, p]] rho^{1/2} on E^3 tori (calibrated);
// E^4: sum_a Gamma_a rho^{-1} d_a rho^{1/2} + H1 N1 + H2 N2 with
// Gamma = (s1 x s1, s1 x s2), N = (s2 x 1, s3 x 1), written through p_c.
OperatorMatrix surface_dirac(const surface::CurvatureField& f, const SpinStructure& spin,
                             SurfaceConvention convention = SurfaceConvention::calibrated);

// sum_a Gamma_a (rho^{-1/2} d_a + (1/2) rho^{-3/2} d_a rho), assembled as
// Gamma_a rho^{-1} d_a rho^{1/2}.
OperatorMatrix intrinsic_surface_dirac(const surface::Grid2D& g, const Eigen::VectorXd& rho, int ambient,
                                       const SpinStructure& spin,
                                       SurfaceConvention convention = SurfaceConvention::calibrated);

// Pointwise sum of normal Clifford elements times H components (E^3: H * 1).
Eigen::MatrixXcd mean_curvature_potential(const surface::CurvatureField& f);

// Clifford images used by the surface operators (frame and normal directions).
std::array<Eigen::MatrixXcd, 2> surface_frame_gammas(int ambient, SurfaceConvention convention);
std::array<Eigen::MatrixXcd, 2> surface_normal_gammas(int ambient);

struct SpectrumResult {
  Eigen::VectorXcd eigenvalues;     // of i D (anti-hermitian) or D (hermitian), sorted
  Eigen::VectorXd singular_values;  // ascending
  std::vector<Sector> sectors;
  std::string solver;
  int kernel_dim = 0;
};

// k = 0: full spectrum. Anti-hermitian operators go through a hermitian
// eigensolve of i D, hermitian ones of D; the others through singular values (dense for k = 0,
// otherwise smallest-k by inverse subspace iteration with a fixed seed).
SpectrumResult spectrum(const OperatorMatrix& op, int k = 0, double kernel_tol = 1e-8);

Eigen::VectorXd smallest_singular_values(const Eigen::MatrixXcd& m, int k);

double zero_mode_residual(const OperatorMatrix& op, const Eigen::VectorXcd& psi);

Eigen::VectorXcd curve_spinor_vector(const curve::CurveSpinor& s);
struct CalibratedSpinor {
  Eigen::VectorXcd psi;  // (psi1, psi2) stacked
  std::array<Sector, 2> sector{Sector::periodic, Sector::periodic};
};

// Pairing that the calibrated E^3 operator annihilates:
// rho^{-1/2} (phi1, -phi2) with phi1 = sqrt(-i d conj(Z)), phi2 = conj(sqrt(-i dZ))
// and the relative sign fixed by phi1 * conj(phi2) = d X3.
CalibratedSpinor calibrated_surface_spinor(const surface::SurfaceSpinor& s, const surface::Grid2D& g,
                                           const Eigen::VectorXd& rho);

// E^{-1} D_anti E against D_per with d_s -> d_s + i pi / L, E = diag(exp(i pi s / L)),
// measured off the periodic Nyquist mode.
double sector_shift_residual(const curve::CurvatureData& d, CurveForm form = CurveForm::canonical);

struct IndexDiagnostics {
  int rotation_number = 0;
  int kernel_dim_periodic = 0;
  int kernel_dim_antiperiodic = 0;
  Sector kernel_sector = Sector::periodic;
  bool parity_consistent = false;  // kernel antiperiodic iff rotation number odd
};

IndexDiagnostics index_diagnostics(const curve::ArclengthCurve& c, double kernel_tol = 1e-6);

}  // namespace dwl::dirac
