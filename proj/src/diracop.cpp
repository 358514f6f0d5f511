#include "dwl/diracop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "dwl/errors.hpp"

namespace dwl::dirac {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

Mat pauli(int a) {
  Mat m = Mat::Zero(2, 2);
  switch (a) {
    case 0: m(0, 0) = m(1, 1) = 1; break;
    case 1: m(0, 1) = m(1, 0) = 1; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    default: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

// Spectral first derivative, made exactly antisymmetric.
Eigen::MatrixXd antisymmetric(const Eigen::MatrixXd& m) { return 0.5 * (m - m.transpose()); }

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
  const Eigen::Index n = a.rows();
  Mat m(2 * n, 2 * n);
  m << a, b, c, d;
  return m;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void check_spin(const SpinStructure& spin, std::size_t expected) {
  require(spin.sectors.size() == expected, ErrorKind::usage,
          "spin structure needs one sector per periodic direction (" + std::to_string(expected) + ")");
}

Mat curve_operator(const curve::CurvatureData& d, const Mat& p, CurveForm form) {
  if (form == CurveForm::canonical) {
    const Vec kc = d.dirac_potential();
    const Mat off = (0.5 * kc).asDiagonal();
    return block2(p, off, -off.adjoint(), p);
  }
  const Mat v = d.v().cast<Complex>().asDiagonal();
  const Mat q = -kI * p;
  return block2(v, q, q, v);
}

void check_curve(const curve::CurvatureData& d) {
  require(d.closed, ErrorKind::usage, "curve Dirac operators need a closed curve");
  require(d.size() >= 2 && d.size() % 2 == 0, ErrorKind::usage, "curve Dirac operators need an even sample count");
  require(d.kappa_c_periodic, ErrorKind::numerical,
          "complex curvature is not periodic (total torsion not a multiple of 2 pi)");
}

Mat curve_derivative(const curve::CurvatureData& d, Sector sector) {
  return antisymmetric(spectral::fourier_matrix(d.size(), d.length, sector, 1)).cast<Complex>();
}

void check_surface_grid(const surface::Grid2D& g) {
  g.validate();
  require(g.doubly_periodic(), ErrorKind::usage, "surface Dirac operators need a doubly periodic grid");
}

std::array<Mat, 2> surface_derivatives(const surface::Grid2D& g, const SpinStructure& spin) {
  check_spin(spin, 2);
  return {antisymmetric(surface::grid_derivative_matrix(g, 0, spin.sectors[0])).cast<Complex>(),
          antisymmetric(surface::grid_derivative_matrix(g, 1, spin.sectors[1])).cast<Complex>()};
}

// rho^{-1} D rho^{1/2}
Mat weighted(const Mat& d, const RVec& rho) {
  return rho.cwiseInverse().cast<Complex>().asDiagonal() * d * rho.cwiseSqrt().cast<Complex>().asDiagonal();
}

// Columns spanning the complement of the Nyquist vector (periodic) or everything.
Eigen::MatrixXd line_basis(int n, Sector sector) {
  if (sector == Sector::antiperiodic) return Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd nyq(n);
  for (int j = 0; j < n; ++j) nyq[j] = j % 2 ? -1.0 : 1.0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(nyq);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

Eigen::MatrixXd resolved_basis(const surface::Grid2D& g, const SpinStructure& spin, int components) {
  if (spin.sectors[0] == Sector::antiperiodic && spin.sectors[1] == Sector::antiperiodic) return {};
  const Eigen::MatrixXd b = Eigen::kroneckerProduct(line_basis(g.nu, spin.sectors[0]), line_basis(g.nv, spin.sectors[1]));
  return Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(components, components), b);
}

std::string convention_tag(SurfaceConvention c) { return c == SurfaceConvention::calibrated ? "thm44_sigma3" : "thm44_printed"; }

Eigen::VectorXd sorted_ascending(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

}  // namespace

std::string to_string(Structure s) {
  switch (s) {
    case Structure::anti_hermitian: return "anti-hermitian";
    case Structure::hermitian: return "hermitian";
    case Structure::sigma3_hermitian: return "sigma3-hermitian";
    default: return "general";
  }
}

OperatorMatrix curve_dirac(const curve::CurvatureData& d, const SpinStructure& spin, CurveForm form) {
  check_spin(spin, 1);
  check_curve(d);
  OperatorMatrix op;
  op.nodes = d.size();
  op.components = 2;
  op.sectors = spin.sectors;
  op.matrix = curve_operator(d, curve_derivative(d, spin.sectors[0]), form);
  if (spin.sectors[0] == Sector::periodic)
    op.resolved = Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(2, 2), line_basis(d.size(), Sector::periodic));
  if (form == CurveForm::canonical) {
    op.structure = Structure::anti_hermitian;
    op.convention = "canonical";
    op.structure_residual = max_abs(op.matrix + op.matrix.adjoint());
  } else {
    op.structure = Structure::hermitian;
    op.convention = "intro";
    op.structure_residual = max_abs(op.matrix - op.matrix.adjoint());
  }
  require(op.structure_residual < kStructureTolerance, ErrorKind::invariant,
          "curve Dirac operator failed its structure check (residual " + std::to_string(op.structure_residual) + ")");
  return op;
}

QuadraticIdentity quadratic_identity(const curve::CurvatureData& d, Sector sector) {
  const Mat dm = curve_dirac(d, SpinStructure{{sector}}, CurveForm::intro).matrix;
  const Eigen::Index n = d.size();
  const Mat sq = dm * dm;
  const Mat half_trace = 0.5 * (sq.topLeftCorner(n, n) + sq.bottomRightCorner(n, n));
  const Mat p = curve_derivative(d, sector);
  const RVec v = d.v();
  const Mat expected = Mat(v.cwiseProduct(v).cast<Complex>().asDiagonal()) - p * p;
  QuadraticIdentity q;
  q.residual = (half_trace - expected).norm();
  q.bound = 1e-12 * dm.squaredNorm();
  const double k2 = d.k.squaredNorm();
  q.potential_ratio = k2 > 0 ? v.squaredNorm() / (0.5 * k2) : 0.0;
  return q;
}

std::array<Eigen::MatrixXcd, 2> surface_frame_gammas(int ambient, SurfaceConvention convention) {
  if (ambient == 3 && convention == SurfaceConvention::printed) return {pauli(1), pauli(2)};
  return surface::frame_gammas(ambient);
}

std::array<Eigen::MatrixXcd, 2> surface_normal_gammas(int ambient) {
  require(ambient == 4, ErrorKind::usage, "normal Clifford pair is defined for E^4");
  return {Mat(Eigen::kroneckerProduct(pauli(2), pauli(0))), Mat(Eigen::kroneckerProduct(pauli(3), pauli(0)))};
}

OperatorMatrix surface_dirac(const surface::CurvatureField& f, const SpinStructure& spin, SurfaceConvention convention) {
  const surface::Grid2D& g = f.grid;
  check_surface_grid(g);
  const int n = g.size();
  require(f.rho.size() == n, ErrorKind::usage, "curvature field has no conformal factor");
  const auto [du, dv] = surface_derivatives(g, spin);
  OperatorMatrix op;
  op.nodes = n;
  op.sectors = spin.sectors;
  op.convention = convention_tag(convention);
  const Mat rinv = f.rho.cwiseInverse().cast<Complex>().asDiagonal();
  const Mat rhalf = f.rho.cwiseSqrt().cast<Complex>().asDiagonal();

  if (f.ambient == 3) {
    require(f.p.size() == n, ErrorKind::usage, "curvature field has no potential p");
    const Mat del = 0.5 * (du - kI * dv);
    const Mat delbar = 0.5 * (du + kI * dv);
    const Mat pm = f.p.cast<Complex>().asDiagonal();
    const Mat lower = convention == SurfaceConvention::calibrated ? Mat(-delbar) : delbar;
    const Mat m = block2(pm, del, lower, pm);
    const Mat w_left = Eigen::kroneckerProduct(Mat::Identity(2, 2), rinv);
    const Mat w_right = Eigen::kroneckerProduct(Mat::Identity(2, 2), rhalf);
    op.components = 2;
    op.resolved = resolved_basis(g, spin, 2);
    op.matrix = 2.0 * w_left * m * w_right;
    const RVec r34 = f.rho.array().pow(0.75);
    const Mat left = Eigen::kroneckerProduct(Mat::Identity(2, 2), Mat(r34.cast<Complex>().asDiagonal()));
    const Mat right =
        Eigen::kroneckerProduct(Mat::Identity(2, 2), Mat(r34.cwiseInverse().cast<Complex>().asDiagonal()));
    op.core = left * (0.5 * op.matrix) * right;
    op.structure = Structure::sigma3_hermitian;
    if (convention == SurfaceConvention::calibrated) {
      op.structure_residual = max_abs(op.core - op.core.adjoint());
    } else {
      const Mat s3 = Eigen::kroneckerProduct(pauli(3), Mat::Identity(n, n));
      const Mat t = s3 * op.core;
      op.structure_residual = max_abs(t - t.adjoint());
    }
    require(op.structure_residual < kSurfaceStructureTolerance, ErrorKind::invariant,
            "surface Dirac core failed its hermiticity check (residual " + std::to_string(op.structure_residual) + ")");
    return op;
  }

  require(f.pc.size() == n, ErrorKind::usage, "curvature field has no potential p_c");
  // 4x4 form: sigma_1 x [[0, 2 d], [2 dbar, 0]] conjugated by the weights,
  // plus 2 rho^{-1} (Re p_c N1 + Im p_c N2) rho^{1/2}.
  const auto nor = surface_normal_gammas(4);
  const Mat re = f.pc.real().cast<Complex>().asDiagonal();
  const Mat im = f.pc.imag().cast<Complex>().asDiagonal();
  const Mat del = 0.5 * (du - kI * dv);
  const Mat delbar = 0.5 * (du + kI * dv);
  const Mat z = Mat::Zero(n, n);
  const Mat inner = block2(z, 2.0 * del, 2.0 * delbar, z);
  Mat m = Eigen::kroneckerProduct(pauli(1), inner);
  m += Eigen::kroneckerProduct(nor[0], Mat(2.0 * re)) + Eigen::kroneckerProduct(nor[1], Mat(2.0 * im));
  const Mat w_left = Eigen::kroneckerProduct(Mat::Identity(4, 4), rinv);
  const Mat w_right = Eigen::kroneckerProduct(Mat::Identity(4, 4), rhalf);
  op.components = 4;
  op.resolved = resolved_basis(g, spin, 4);
  op.matrix = w_left * m * w_right;
  op.structure = Structure::general;
  op.structure_residual = 0;
  return op;
}

OperatorMatrix intrinsic_surface_dirac(const surface::Grid2D& g, const Eigen::VectorXd& rho, int ambient,
                                       const SpinStructure& spin, SurfaceConvention convention) {
  check_surface_grid(g);
  require(rho.size() == g.size() && (rho.array() > 0).all(), ErrorKind::usage,
          "conformal factor must be positive at every node");
  require(ambient == 3 || ambient == 4, ErrorKind::usage, "ambient dimension must be 3 or 4");
  const auto d = surface_derivatives(g, spin);
  const auto gam = surface_frame_gammas(ambient, convention);
  OperatorMatrix op;
  op.nodes = g.size();
  op.components = static_cast<int>(gam[0].rows());
  op.resolved = resolved_basis(g, spin, op.components);
  op.sectors = spin.sectors;
  op.convention = convention_tag(convention);
  op.structure = Structure::general;
  op.matrix = Eigen::kroneckerProduct(gam[0], weighted(d[0], rho));
  op.matrix += Eigen::kroneckerProduct(gam[1], weighted(d[1], rho));
  return op;
}

Eigen::MatrixXcd mean_curvature_potential(const surface::CurvatureField& f) {
  const int n = f.grid.size();
  if (f.ambient == 3) {
    require(f.h.size() == n, ErrorKind::usage, "curvature field has no mean curvature");
    return Eigen::kroneckerProduct(Mat::Identity(2, 2), Mat(f.h.cast<Complex>().asDiagonal()));
  }
  require(f.h1.size() == n && f.h2.size() == n, ErrorKind::usage, "curvature field has no normal components");
  const auto nor = surface_normal_gammas(4);
  Mat m = Eigen::kroneckerProduct(nor[0], Mat(f.h1.cast<Complex>().asDiagonal()));
  m += Eigen::kroneckerProduct(nor[1], Mat(f.h2.cast<Complex>().asDiagonal()));
  return m;
}

Eigen::VectorXd smallest_singular_values(const Eigen::MatrixXcd& m, int k) {
  const int n = static_cast<int>(m.rows());
  require(m.rows() == m.cols(), ErrorKind::usage, "singular values need a square matrix");
  require(k >= 1 && k <= n, ErrorKind::usage, "requested singular value count out of range");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0) return Eigen::VectorXd::Zero(k);
  const int b = std::min(n, k + 4);

  // Shifted normal equations keep exact kernels from swamping the block;
  // Ritz values are taken from m itself.
  Mat normal = m.adjoint() * m;
  normal.diagonal().array() += 1e-8 * scale * scale;
  const Eigen::LLT<Mat> llt(normal);
  require(llt.info() == Eigen::Success, ErrorKind::numerical, "shifted normal matrix is not positive definite");

  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> uni(-1, 1);
  Mat x(n, b);
  for (int j = 0; j < b; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = Complex(uni(rng), uni(rng));

  Eigen::VectorXd prev = Eigen::VectorXd::Constant(k, -1);
  for (int it = 0; it < kMaxInverseIterations; ++it) {
    const Mat y = llt.solve(x);
    require(y.allFinite(), ErrorKind::numerical, "inverse iteration produced non-finite values");
    Eigen::HouseholderQR<Mat> qr(y);
    x = qr.householderQ() * Mat::Identity(n, b);
    Eigen::JacobiSVD<Mat> svd(m * x);
    const Eigen::VectorXd sv = sorted_ascending(svd.singularValues()).head(k);
    if (it > 0 && (sv - prev).cwiseAbs().maxCoeff() <= 1e-13 * scale + 1e-10 * sv.maxCoeff()) return sv;
    prev = sv;
  }
  fail(ErrorKind::numerical, "inverse iteration did not converge in " + std::to_string(kMaxInverseIterations) +
                                 " steps");
}

SpectrumResult spectrum(const OperatorMatrix& op, int k, double kernel_tol) {
  const int dim = op.dimension();
  require(k >= 0 && k <= dim, ErrorKind::usage, "requested eigenvalue count out of range");
  SpectrumResult r;
  r.sectors = op.sectors;
  if (op.structure == Structure::anti_hermitian || op.structure == Structure::hermitian) {
    require(dim <= kDenseLimit, ErrorKind::usage,
            "operator dimension " + std::to_string(dim) + " exceeds the dense limit " + std::to_string(kDenseLimit));
    Mat h = op.structure == Structure::anti_hermitian ? Mat(kI * op.matrix) : op.matrix;
    if (op.resolved.size()) h = op.resolved.transpose() * h * op.resolved;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();  // ascending
    r.eigenvalues = ev.cast<Complex>();
    Eigen::VectorXd sv = sorted_ascending(ev.cwiseAbs());
    r.singular_values = k > 0 ? Eigen::VectorXd(sv.head(k)) : sv;
    r.solver = op.structure == Structure::anti_hermitian ? "hermitian_eig_iD" : "hermitian_eig";
    r.kernel_dim = static_cast<int>((ev.array().abs() < kernel_tol).count());
    return r;
  }
  const Mat a = op.resolved.size() ? Mat(op.resolved.transpose() * op.matrix * op.resolved) : op.matrix;
  require(k <= a.rows(), ErrorKind::usage, "requested singular value count exceeds the resolved dimension");
  if (k == 0) {
    require(dim <= kDenseLimit, ErrorKind::usage,
            "operator dimension " + std::to_string(dim) + " exceeds the dense limit " + std::to_string(kDenseLimit));
    Eigen::BDCSVD<Mat> svd(a);
    r.singular_values = sorted_ascending(svd.singularValues());
    r.solver = "dense_svd";
  } else {
    r.singular_values = smallest_singular_values(a, k);
    r.solver = "inverse_iteration";
  }
  r.kernel_dim = static_cast<int>((r.singular_values.array() < kernel_tol).count());
  return r;
}

double zero_mode_residual(const OperatorMatrix& op, const Eigen::VectorXcd& psi) {
  require(psi.size() == op.dimension(), ErrorKind::usage,
          "spinor has " + std::to_string(psi.size()) + " entries, operator expects " + std::to_string(op.dimension()));
  const double nrm = psi.norm();
  require(nrm > 0, ErrorKind::usage, "zero spinor");
  return (op.matrix * psi).norm() / nrm;
}

Eigen::VectorXcd curve_spinor_vector(const curve::CurveSpinor& s) {
  Vec v(s.psi1.size() + s.psi2.size());
  v << s.psi1, s.psi2;
  return v;
}

CalibratedSpinor calibrated_surface_spinor(const surface::SurfaceSpinor& s, const surface::Grid2D& g,
                                           const Eigen::VectorXd& rho) {
  require(s.dzbar.size() == g.size() && s.dx3.size() == g.size(), ErrorKind::usage,
          "surface spinor lacks the derivative data for calibration");
  require(rho.size() == g.size() && (rho.array() > 0).all(), ErrorKind::usage,
          "conformal factor must be positive at every node");
  Vec psi1, psi2;
  const auto s1 = surface::branch_sqrt(g, Vec(-kI * s.dzbar), psi1);
  const auto s2 = surface::branch_sqrt(g, Vec(-kI * s.dz), psi2);
  require(s1 == s2, ErrorKind::numerical, "calibrated spinor components disagree on the sector");
  psi2 = psi2.conjugate().eval();
  Eigen::Index k = 0;
  s.dx3.cwiseAbs().maxCoeff(&k);
  if (std::abs(psi1[k] * std::conj(psi2[k]) - s.dx3[k]) > std::abs(psi1[k] * std::conj(psi2[k]) + s.dx3[k]))
    psi2 = -psi2;
  CalibratedSpinor c;
  c.psi.resize(2 * g.size());
  const Vec w = rho.cwiseSqrt().cwiseInverse().cast<Complex>();
  c.psi << psi1.cwiseProduct(w), -psi2.cwiseProduct(w);
  c.sector = s1;
  return c;
}

double sector_shift_residual(const curve::CurvatureData& d, CurveForm form) {
  check_curve(d);
  const int n = d.size();
  Vec phase(n);
  for (int j = 0; j < n; ++j) phase[j] = std::polar(1.0, kPi * j / n);
  const Mat e = Eigen::kroneckerProduct(Mat::Identity(2, 2), Mat(phase.asDiagonal()));
  const Mat lhs = e.adjoint() * curve_operator(d, curve_derivative(d, Sector::antiperiodic), form) * e;
  const Mat shifted = curve_derivative(d, Sector::periodic) + Complex(0, kPi / d.length) * Mat::Identity(n, n);
  const Mat rhs = curve_operator(d, shifted, form);
  Vec nyq(n);
  for (int j = 0; j < n; ++j) nyq[j] = (j % 2 ? -1.0 : 1.0) / std::sqrt(double(n));
  const Mat q = Mat::Identity(n, n) - nyq * nyq.adjoint();
  const Mat q2 = Eigen::kroneckerProduct(Mat::Identity(2, 2), q);
  return max_abs((lhs - rhs) * q2);
}

IndexDiagnostics index_diagnostics(const curve::ArclengthCurve& c, double kernel_tol) {
  require(c.closed && c.ambient == 2, ErrorKind::usage, "index diagnostics need a closed plane curve");
  IndexDiagnostics r;
  r.rotation_number = curve::rotation_number(c).value;
  const curve::CurvatureData d = curve::frenet_data(c);
  r.kernel_dim_periodic = spectrum(curve_dirac(d, {{Sector::periodic}}), 0, kernel_tol).kernel_dim;
  r.kernel_dim_antiperiodic = spectrum(curve_dirac(d, {{Sector::antiperiodic}}), 0, kernel_tol).kernel_dim;
  r.kernel_sector = r.kernel_dim_antiperiodic > r.kernel_dim_periodic ? Sector::antiperiodic : Sector::periodic;
  const bool odd = r.rotation_number % 2 != 0;
  r.parity_consistent = odd ? (r.kernel_dim_antiperiodic > 0 && r.kernel_dim_periodic == 0)
                            : (r.kernel_dim_periodic > 0 && r.kernel_dim_antiperiodic == 0);
  return r;
}

}  // namespace dwl::dirac
