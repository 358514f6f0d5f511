#include "dwl/surfgeo.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "dwl/clifford.hpp"
#include "dwl/errors.hpp"

namespace dwl::surface {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec = Eigen::VectorXd;

// Applies a 1-D operation to every line of a node field along `axis`.
template <class V, class F>
V along_axis(const Grid2D& g, const V& f, int axis, F op) {
  V out(f.size());
  const int n = axis == 0 ? g.nu : g.nv;
  const int lines = axis == 0 ? g.nv : g.nu;
  V line(n);
  for (int l = 0; l < lines; ++l) {
    for (int k = 0; k < n; ++k) line[k] = f[axis == 0 ? g.index(k, l) : g.index(l, k)];
    const V d = op(line);
    for (int k = 0; k < n; ++k) out[axis == 0 ? g.index(k, l) : g.index(l, k)] = d[k];
  }
  return out;
}

struct Frame {
  std::vector<Point> xu, xv, xuu, xvv;
};

Frame surface_derivatives(const ConformalGrid& s) {
  const Grid2D& g = s.grid;
  const int n = g.size();
  Frame fr;
  fr.xu.assign(n, Point::Zero());
  fr.xv.assign(n, Point::Zero());
  fr.xuu.assign(n, Point::Zero());
  fr.xvv.assign(n, Point::Zero());
  for (int c = 0; c < s.ambient; ++c) {
    Vec coord(n);
    for (int k = 0; k < n; ++k) coord[k] = s.points[k][c];
    for (int axis = 0; axis < 2; ++axis) {
      // Remove the linear drift of translation-periodic directions first.
      Vec f = coord;
      const double shift = g.periodic[axis] ? s.period_shift[axis][c] : 0.0;
      const double len = axis == 0 ? g.lu : g.lv;
      if (shift != 0.0)
        for (int i = 0; i < g.nu; ++i)
          for (int j = 0; j < g.nv; ++j) {
            const double x = axis == 0 ? i * g.du() : j * g.dv();
            f[g.index(i, j)] -= shift * x / len;
          }
      const Vec d1 = grid_derivative(g, f, axis, 1);
      const Vec d2 = grid_derivative(g, f, axis, 2);
      for (int k = 0; k < n; ++k) {
        (axis == 0 ? fr.xu : fr.xv)[k][c] = d1[k] + shift / len;
        (axis == 0 ? fr.xuu : fr.xvv)[k][c] = d2[k];
      }
    }
  }
  return fr;
}

Point complement(Point v, std::initializer_list<const Point*> basis) {
  for (const Point* b : basis) v -= v.dot(*b) * *b;
  return v;
}

double det4(const Point& a, const Point& b, const Point& c, const Point& d) {
  Eigen::Matrix4d m;
  m << a, b, c, d;
  return m.determinant();
}

std::string node_name(const Grid2D& g, int k) {
  return "(" + std::to_string(k / g.nv) + ", " + std::to_string(k % g.nv) + ")";
}

// Predecessor in the scan used to carry frames and branches: along v within a
// row, then down the first column.
int predecessor(const Grid2D& g, int k) {
  const int i = k / g.nv, j = k % g.nv;
  return j > 0 ? g.index(i, j - 1) : g.index(i - 1, 0);
}

// Calls visit(a, b, seam_axis) for each adjacent node pair; seam_axis is -1
// for interior pairs and the wrapped axis otherwise.
template <class F>
void for_each_edge(const Grid2D& g, F visit) {
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      if (j + 1 < g.nv) visit(g.index(i, j), g.index(i, j + 1), -1);
      else if (g.periodic[1]) visit(g.index(i, j), g.index(i, 0), 1);
      if (i + 1 < g.nu) visit(g.index(i, j), g.index(i + 1, j), -1);
      else if (g.periodic[0]) visit(g.index(i, j), g.index(0, j), 0);
    }
}

}  // namespace

void Grid2D::validate() const {
  require(nu >= 16 && nv >= 16, ErrorKind::usage, "surface grids need Nu, Nv >= 16");
  require(nu % 2 == 0 && nv % 2 == 0, ErrorKind::usage, "surface grid sizes must be even");
  require(lu > 0 && lv > 0, ErrorKind::usage, "surface grid lengths must be positive");
}

Vec grid_derivative(const Grid2D& g, const Vec& f, int axis, int order) {
  require(f.size() == g.size(), ErrorKind::usage, "field size does not match the grid");
  require(axis == 0 || axis == 1, ErrorKind::usage, "axis must be 0 or 1");
  const double len = axis == 0 ? g.lu : g.lv;
  const double h = axis == 0 ? g.du() : g.dv();
  if (g.periodic[axis])
    return along_axis(g, f, axis, [&](const Vec& line) { return spectral::derivative(line, len, order); });
  return along_axis(g, f, axis,
                    [&](const Vec& line) { return spectral::fd_derivative(line, h, order, spectral::Boundary::open); });
}

Eigen::VectorXcd grid_derivative(const Grid2D& g, const Eigen::VectorXcd& f, int axis, int order) {
  const Vec re = grid_derivative(g, Vec(f.real()), axis, order);
  const Vec im = grid_derivative(g, Vec(f.imag()), axis, order);
  Eigen::VectorXcd out(f.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

Eigen::MatrixXd grid_derivative_matrix(const Grid2D& g, int axis, spectral::Sector sector, int order) {
  require(axis == 0 || axis == 1, ErrorKind::usage, "axis must be 0 or 1");
  const int n = axis == 0 ? g.nu : g.nv;
  const double len = axis == 0 ? g.lu : g.lv;
  const double h = axis == 0 ? g.du() : g.dv();
  const Eigen::MatrixXd d1 = g.periodic[axis] ? spectral::fourier_matrix(n, len, sector, order)
                                              : spectral::fd_matrix(n, h, order, spectral::Boundary::open);
  if (axis == 0) return Eigen::kroneckerProduct(d1, Eigen::MatrixXd::Identity(g.nv, g.nv));
  return Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(g.nu, g.nu), d1);
}

void ConformalGrid::validate() const {
  grid.validate();
  require(ambient == 3 || ambient == 4, ErrorKind::usage, "surface ambient dimension must be 3 or 4");
  require(static_cast<int>(points.size()) == grid.size(), ErrorKind::usage,
          "surface has " + std::to_string(points.size()) + " points, expected Nu*Nv = " +
              std::to_string(grid.size()));
  for (const Point& p : points) {
    require(p.allFinite(), ErrorKind::usage, "non-finite surface sample");
    if (ambient == 3) require(p[3] == 0.0, ErrorKind::usage, "E^3 surface sample with a fourth coordinate");
  }
}

ConformalFactor conformal_factor(const ConformalGrid& s, double tol) {
  s.validate();
  const Frame fr = surface_derivatives(s);
  const int n = s.grid.size();
  ConformalFactor cf;
  cf.rho.resize(n);
  for (int k = 0; k < n; ++k) {
    const double a = fr.xu[k].squaredNorm(), b = fr.xv[k].squaredNorm(), c = fr.xu[k].dot(fr.xv[k]);
    require(a > 0, ErrorKind::numerical, "degenerate immersion at node " + node_name(s.grid, k));
    const double r = std::max(std::abs(a - b), std::abs(c)) / a;
    if (r > cf.residual) {
      cf.residual = r;
      cf.worst_node = k;
    }
    cf.rho[k] = a;
  }
  if (!(cf.residual < tol)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", cf.residual);
    fail(ErrorKind::numerical,
         std::string("not conformal: residual ") + buf + " at node " + node_name(s.grid, cf.worst_node));
  }
  return cf;
}

Vec CurvatureField::mean_curvature_norm_squared() const {
  if (ambient == 3) return h.array().square();
  return h1.array().square() + h2.array().square();
}

CurvatureField mean_curvature(const ConformalGrid& s, bool swap_orientation) {
  const ConformalFactor cf = conformal_factor(s);
  const Frame fr = surface_derivatives(s);
  const Grid2D& g = s.grid;
  const int n = g.size();
  CurvatureField f;
  f.grid = g;
  f.ambient = s.ambient;
  f.rho = cf.rho;
  f.conformal_residual = cf.residual;
  f.h = Vec::Zero(n);
  f.h1 = Vec::Zero(n);
  f.h2 = Vec::Zero(n);
  f.n1.assign(n, Point::Zero());
  std::vector<Point> hvec(n);
  for (int k = 0; k < n; ++k) hvec[k] = (fr.xuu[k] + fr.xvv[k]) / (2 * cf.rho[k]);

  if (s.ambient == 3) {
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector3d c = fr.xu[k].head<3>().cross(fr.xv[k].head<3>());
      f.n1[k].head<3>() = c.normalized();
      f.h[k] = -hvec[k].dot(f.n1[k]);
    }
    f.h1 = f.h;
  } else {
    f.n2.assign(n, Point::Zero());
    const std::array<Point, 4> e{Point::Unit(0), Point::Unit(1), Point::Unit(2), Point::Unit(3)};
    for (int k = 0; k < n; ++k) {
      const Point t1 = fr.xu[k].normalized();
      const Point t2 = complement(fr.xv[k], {&t1}).normalized();
      Point a, b;
      if (k == 0) {
        for (int seed : {3, 2, 1, 0}) {
          b = complement(e[seed], {&t1, &t2});
          if (b.norm() > 0.3) break;
        }
        b.normalize();
        for (int seed : {2, 1, 0, 3}) {
          a = complement(e[seed], {&t1, &t2, &b});
          if (a.norm() > 0.3) break;
        }
        a.normalize();
      } else {
        const int p = predecessor(g, k);
        a = complement(f.n1[p], {&t1, &t2}).normalized();
        b = complement(f.n2[p], {&t1, &t2, &a}).normalized();
      }
      if (det4(t1, t2, a, b) < 0) (k == 0 ? a : b) *= -1;
      f.n1[k] = a;
      f.n2[k] = b;
    }
    for_each_edge(g, [&](int a, int b, int) {
      if (f.n1[a].dot(f.n1[b]) < 0.5 || f.n2[a].dot(f.n2[b]) < 0.5)
        fail(ErrorKind::numerical, "normal frame discontinuity between nodes " + node_name(g, a) + " and " +
                                       node_name(g, b));
    });
    if (swap_orientation)
      for (Point& v : f.n2) v = -v;
    for (int k = 0; k < n; ++k) {
      f.h1[k] = -hvec[k].dot(f.n1[k]);
      f.h2[k] = -hvec[k].dot(f.n2[k]);
    }
    f.h = f.h1;
  }
  f.p = 0.5 * f.rho.array().sqrt() * f.h1.array();
  const ComplexMeanCurvature c = complex_mean_curvature(f);
  f.hc = c.hc;
  f.pc = c.pc;
  return f;
}

ComplexMeanCurvature complex_mean_curvature(const CurvatureField& f) {
  ComplexMeanCurvature c;
  const int n = static_cast<int>(f.rho.size());
  c.hc.resize(n);
  c.pc.resize(n);
  for (int k = 0; k < n; ++k) {
    c.hc[k] = f.ambient == 3 ? Complex(f.h[k], 0) : Complex(f.h1[k], f.h2[k]);
    c.pc[k] = 0.5 * std::sqrt(f.rho[k]) * c.hc[k];
  }
  return c;
}

namespace {

void check_rho(const Grid2D& g, const Vec& rho) {
  require(rho.size() == g.size(), ErrorKind::usage, "rho size does not match the grid");
  require(rho.minCoeff() > 0, ErrorKind::usage, "rho must be positive");
}

}  // namespace

ConnectionField christoffel_conformal(const Grid2D& g, const Vec& rho) {
  check_rho(g, rho);
  const std::array<Vec, 2> d{grid_derivative(g, rho, 0), grid_derivative(g, rho, 1)};
  ConnectionField cf;
  cf.grid = g;
  const Vec inv = rho.cwiseInverse();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Vec v = Vec::Zero(g.size());
        if (a == b) v += d[c];
        if (a == c) v += d[b];
        if (b == c) v -= d[a];
        cf.gamma[a][b][c] = 0.5 * v.cwiseProduct(inv);
      }
  return cf;
}

std::array<Eigen::MatrixXcd, 2> frame_gammas(int ambient) {
  using clifford::pauli::sigma;
  const Complex i(0, 1);
  if (ambient == 3) return {Eigen::MatrixXcd(i * sigma(2)), Eigen::MatrixXcd(-i * sigma(1))};
  require(ambient == 4, ErrorKind::usage, "ambient dimension must be 3 or 4");
  return {Eigen::MatrixXcd(Eigen::kroneckerProduct(sigma(1), sigma(1))),
          Eigen::MatrixXcd(Eigen::kroneckerProduct(sigma(1), sigma(2)))};
}

ConnectionField spin_connection_conformal(const Grid2D& g, const Vec& rho, int ambient) {
  ConnectionField cf = christoffel_conformal(g, rho);
  const auto gam = frame_gammas(ambient);
  const std::array<Vec, 2> d{grid_derivative(g, rho, 0), grid_derivative(g, rho, 1)};
  const Eigen::Index m = gam[0].rows();
  std::array<std::array<Eigen::MatrixXcd, 2>, 2> sig;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c)
      sig[b][c] = b == c ? Eigen::MatrixXcd::Zero(m, m) : Eigen::MatrixXcd(0.5 * gam[b] * gam[c]);
  for (int a = 0; a < 2; ++a) {
    cf.omega[a].assign(g.size(), Eigen::MatrixXcd::Zero(m, m));
    for (int k = 0; k < g.size(); ++k) {
      Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, m);
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          const double coef = (a == c ? d[b][k] : 0.0) - (a == b ? d[c][k] : 0.0);
          if (coef != 0.0) w += coef * sig[b][c];
        }
      cf.omega[a][k] = -0.25 / rho[k] * w;
    }
  }
  return cf;
}

Eigen::MatrixXd anti_self_adjoint_factor_metric(const Grid2D& g, const Vec& metric_det, int axis,
                                                spectral::Sector sector) {
  require(metric_det.size() == g.size(), ErrorKind::usage, "metric determinant size does not match the grid");
  require(metric_det.minCoeff() > 0, ErrorKind::usage, "nonpositive metric determinant");
  const Vec q = metric_det.array().pow(0.25);
  return q.cwiseInverse().asDiagonal() * grid_derivative_matrix(g, axis, sector) * q.asDiagonal();
}

Eigen::MatrixXd anti_self_adjoint_factor(const Grid2D& g, const Vec& rho, int axis, spectral::Sector sector) {
  check_rho(g, rho);
  return anti_self_adjoint_factor_metric(g, rho.array().square(), axis, sector);
}

namespace {

Vec trapezoid_weights(const Grid2D& g) {
  Vec w = Vec::Constant(g.size(), g.du() * g.dv());
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      if (!g.periodic[0] && (i == 0 || i == g.nu - 1)) w[g.index(i, j)] *= 0.5;
      if (!g.periodic[1] && (j == 0 || j == g.nv - 1)) w[g.index(i, j)] *= 0.5;
    }
  return w;
}

}  // namespace

WillmoreArea willmore_area(const CurvatureField& f) {
  const Vec w = trapezoid_weights(f.grid);
  WillmoreArea out;
  out.area = w.dot(f.rho);
  out.willmore = w.dot(f.rho.cwiseProduct(f.mean_curvature_norm_squared()));
  return out;
}

GaussBonnet gauss_bonnet(const Grid2D& g, const Vec& rho) {
  check_rho(g, rho);
  require(g.doubly_periodic(), ErrorKind::usage, "Gauss-Bonnet diagnostic needs a doubly periodic grid");
  const Vec lr = rho.array().log();
  const Vec lap = grid_derivative(g, lr, 0, 2) + grid_derivative(g, lr, 1, 2);
  // K rho = -lap / 2.
  GaussBonnet gb;
  gb.raw = -0.5 * lap.sum() * g.du() * g.dv() / (2 * kPi);
  gb.chi = static_cast<int>(std::lround(gb.raw));
  gb.residual = std::abs(gb.raw - gb.chi);
  require(gb.residual < 0.05, ErrorKind::numerical, "Euler characteristic estimate is not near an integer");
  return gb;
}

namespace {

// Square root continued along v lines by linear extrapolation (so a branch
// passes through double zeros smoothly) and along u at j = 0 by nearest sign.
// Returns the seam sign per axis (+1 periodic, -1 antiperiodic).
std::array<double, 2> continuous_sqrt(const Grid2D& g, const Eigen::VectorXcd& z, Eigen::VectorXcd& out) {
  out.resize(g.size());
  auto closer = [](Complex r, Complex pred) { return std::abs(r - pred) <= std::abs(r + pred); };
  auto v_prediction = [&](int i, int j) {
    return j >= 2 ? 2.0 * out[g.index(i, j - 1)] - out[g.index(i, j - 2)] : out[g.index(i, j - 1)];
  };
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      Complex r = std::sqrt(z[g.index(i, j)]);
      if (j > 0) {
        if (!closer(r, v_prediction(i, j))) r = -r;
      } else if (i > 0) {
        if (!closer(r, out[g.index(i - 1, 0)])) r = -r;
      }
      out[g.index(i, j)] = r;
    }
  // u edges away from the seam must agree with the nearest-sign rule.
  for (int i = 1; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j)
      require(closer(out[g.index(i, j)], out[g.index(i - 1, j)]), ErrorKind::numerical,
              "spinor branch jumps between nodes " + node_name(g, g.index(i - 1, j)) + " and " +
                  node_name(g, g.index(i, j)));
  std::array<double, 2> seam{0, 0};
  auto record = [&](int axis, bool same) {
    const double sign = same ? 1.0 : -1.0;
    require(seam[axis] == 0 || seam[axis] == sign, ErrorKind::numerical, "inconsistent spinor seam sign");
    seam[axis] = sign;
  };
  for (int j = 0; j < g.nv; ++j) record(0, closer(out[g.index(0, j)], out[g.index(g.nu - 1, j)]));
  for (int i = 0; i < g.nu; ++i) {
    const Complex pred = 2.0 * out[g.index(i, g.nv - 1)] - out[g.index(i, g.nv - 2)];
    record(1, closer(out[g.index(i, 0)], pred));
  }
  return seam;
}

}  // namespace

std::array<spectral::Sector, 2> branch_sqrt(const Grid2D& g, const Eigen::VectorXcd& z, Eigen::VectorXcd& out) {
  require(z.size() == g.size(), ErrorKind::usage, "field size does not match the grid");
  const auto seam = continuous_sqrt(g, z, out);
  return {seam[0] > 0 ? spectral::Sector::periodic : spectral::Sector::antiperiodic,
          seam[1] > 0 ? spectral::Sector::periodic : spectral::Sector::antiperiodic};
}

SurfaceSpinor weierstrass_spinor_surface(const ConformalGrid& s) {
  const ConformalFactor cf = conformal_factor(s);
  const Frame fr = surface_derivatives(s);
  const Grid2D& g = s.grid;
  require(g.doubly_periodic(), ErrorKind::usage, "surface spinor needs a doubly periodic grid");
  SurfaceSpinor sp;
  sp.dz.resize(g.size());
  sp.dzbar.resize(g.size());
  sp.dx3.resize(g.size());
  const Complex i(0, 1);
  for (int k = 0; k < g.size(); ++k) {
    const Complex zu(fr.xu[k][0], fr.xu[k][1]), zv(fr.xv[k][0], fr.xv[k][1]);
    sp.dz[k] = 0.5 * (zu - i * zv);
    sp.dzbar[k] = 0.5 * (std::conj(zu) - i * std::conj(zv));
    sp.dx3[k] = 0.5 * (fr.xu[k][2] - i * fr.xv[k][2]);
    require(std::abs(sp.dz[k]) > 1e-10 * std::sqrt(cf.rho[k]), ErrorKind::numerical,
            "dZ vanishes at node " + node_name(g, k));
  }
  const auto s1 = continuous_sqrt(g, sp.dz, sp.psi1);
  const auto s2 = continuous_sqrt(g, -sp.dz, sp.psi2);
  for (int a = 0; a < 2; ++a) {
    require(s1[a] == s2[a], ErrorKind::numerical, "spinor components disagree on the sector");
    sp.sector[a] = s1[a] > 0 ? spectral::Sector::periodic : spectral::Sector::antiperiodic;
  }
  return sp;
}

ConformalGrid transformed(const ConformalGrid& s, const Eigen::Matrix4d& rotation, const Point& shift, double scale) {
  ConformalGrid out = s;
  for (Point& p : out.points) p = scale * (rotation * p + shift);
  for (Point& t : out.period_shift) t = scale * (rotation * t);
  if (s.ambient == 3)
    for (const Point& p : out.points)
      if (p[3] != 0.0) out.ambient = 4;
  return out;
}

namespace generators {

namespace {

ConformalGrid make(int nu, int nv, double lu, double lv, int ambient) {
  ConformalGrid s;
  s.grid = Grid2D{nu, nv, lu, lv, {true, true}};
  s.grid.validate();
  s.ambient = ambient;
  s.points.assign(s.grid.size(), Point::Zero());
  return s;
}

}  // namespace

ConformalGrid cylinder(double radius, int nu, int nv, double lv) {
  require(radius > 0, ErrorKind::usage, "cylinder radius must be positive");
  ConformalGrid s = make(nu, nv, 2 * kPi, lv, 3);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double u = i * s.grid.du(), v = j * s.grid.dv();
      s.points[s.grid.index(i, j)] = Point(radius * std::cos(u), radius * std::sin(u), radius * v, 0);
    }
  s.period_shift[1] = Point(0, 0, radius * lv, 0);
  return s;
}

ConformalGrid clifford_torus(int nu, int nv, double scale) {
  require(scale > 0, ErrorKind::usage, "scale must be positive");
  ConformalGrid s = make(nu, nv, 2 * kPi, 2 * kPi, 4);
  const double c = scale / std::sqrt(2.0);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double u = i * s.grid.du(), v = j * s.grid.dv();
      s.points[s.grid.index(i, j)] = c * Point(std::cos(u), std::sin(u), std::cos(v), std::sin(v));
    }
  return s;
}

ConformalGrid torus_of_revolution(double big_r, double small_r, int nu, int nv) {
  require(big_r > small_r && small_r > 0, ErrorKind::usage, "torus of revolution needs R > r > 0");
  const double a = std::sqrt(big_r * big_r - small_r * small_r);
  const double lv = 2 * kPi * small_r / a;
  ConformalGrid s = make(nu, nv, 2 * kPi, lv, 3);
  const double cp = std::sqrt(big_r + small_r), cm = std::sqrt(big_r - small_r);
  for (int j = 0; j < nv; ++j) {
    const double v = j * s.grid.dv();
    const double theta = a * v / (2 * small_r);
    double half = std::atan2(cp * std::sin(theta), cm * std::cos(theta));
    half += 2 * kPi * std::round((theta - half) / (2 * kPi));
    const double phi = 2 * half;
    const double radial = big_r + small_r * std::cos(phi);
    // Analytic check of |X_v| = |X_u| from the derivative of the closed form.
    const double dphi = cp * cm * a / small_r /
                        (cm * cm * std::cos(theta) * std::cos(theta) + cp * cp * std::sin(theta) * std::sin(theta));
    const double r = std::abs(radial * radial - small_r * small_r * dphi * dphi) / (radial * radial);
    require(r < 1e-10, ErrorKind::numerical, "torus of revolution: conformal map residual too large");
    for (int i = 0; i < nu; ++i) {
      const double u = i * s.grid.du();
      s.points[s.grid.index(i, j)] =
          Point(radial * std::cos(u), radial * std::sin(u), small_r * std::sin(phi), 0);
    }
  }
  return s;
}

}  // namespace generators

double torus_willmore_closed_form(double big_r, double small_r) {
  const double c = big_r / small_r;
  return kPi * kPi * c * c / std::sqrt(c * c - 1);
}

}  // namespace dwl::surface
