#include "dwl/clifford.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace dwl::clifford {

std::pair<Blade, int> Blade::from_product(const std::vector<int>& indices) {
  std::uint32_t mask = 0;
  int sign = 1;
  for (int i : indices) {
    require(i >= 1 && i <= kMaxDim, ErrorKind::usage, "blade index out of range");
    sign *= blade_product_sign(mask, 1u << (i - 1));
    mask ^= 1u << (i - 1);
  }
  return {Blade{mask}, sign};
}

std::vector<int> Blade::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

// ---------------------------------------------------------------------------

SpinCheck is_spin(const MultiVector& g, double tol) {
  SpinCheck r;
  const auto split = grade_split(g);
  r.even = split.odd.is_zero();
  const int n = g.dim();
  const MultiVector gs = reverse(g);
  r.unit_defect = (gs * g - MultiVector::scalar(n, 1.0)).max_abs();
  for (int i = 1; i <= n; ++i) {
    const MultiVector c = gs * MultiVector::basis(n, i) * g;
    r.offgrade_defect = std::max(r.offgrade_defect, (c - grade_part(c, 1)).max_abs());
  }
  if (!r.even)
    r.reason = "odd part present";
  else if (!(r.unit_defect < tol))
    r.reason = "g* g != 1 (defect " + std::to_string(r.unit_defect) + ")";
  else if (!(r.offgrade_defect < tol))
    r.reason = "conjugation leaves the vector subspace (defect " + std::to_string(r.offgrade_defect) + ")";
  r.ok = r.reason.empty();
  return r;
}

SpinElement::SpinElement(MultiVector g, double tol) : value_(std::move(g)) {
  const SpinCheck c = is_spin(value_, tol);
  require(c.ok, ErrorKind::invariant, "not a spin element: " + c.reason);
}

SpinElement SpinElement::normalized(const MultiVector& g, double tol) {
  const double s = (reverse(g) * g).coefficient(Blade{});
  require(s > 0, ErrorKind::invariant, "cannot normalize: scalar part of g* g is not positive");
  return SpinElement(g * (1.0 / std::sqrt(s)), tol);
}

SpinElement operator*(const SpinElement& a, const SpinElement& b) {
  // The product of unit elements drifts by rounding only.
  return SpinElement(a.value_ * b.value_, 1e-10);
}

SOMatrix::SOMatrix(Eigen::MatrixXd m, double tol) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), ErrorKind::invariant, "SO matrix must be square");
  const auto n = m_.rows();
  const double orth = (m_.transpose() * m_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  require(orth < tol, ErrorKind::invariant, "matrix is not orthogonal");
  require(std::abs(m_.determinant() - 1.0) < tol, ErrorKind::invariant, "determinant is not +1");
}

SOMatrix spin_to_so(const SpinElement& g) {
  const int n = g.dim();
  const MultiVector gs = reverse(g.value());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    const MultiVector c = g.value() * MultiVector::basis(n, j) * gs;
    require((c - grade_part(c, 1)).max_abs() < 1e-10, ErrorKind::invariant,
            "conjugation leaves the vector subspace");
    for (int i = 1; i <= n; ++i) m(i - 1, j - 1) = c.coefficient(Blade{1u << (i - 1)});
  }
  return SOMatrix(std::move(m));
}

MultiVector so_algebra_to_clifford(const Eigen::MatrixXd& A, double tol) {
  require(A.rows() == A.cols(), ErrorKind::usage, "so(n) element must be square");
  require((A + A.transpose()).cwiseAbs().maxCoeff() < tol, ErrorKind::usage, "matrix is not antisymmetric");
  const int n = static_cast<int>(A.rows());
  MultiVector a(n);
  // (A e_i, e_j) = A(j, i)
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && A(j - 1, i - 1) != 0.0) a += MultiVector::monomial(n, {i, j}, 0.25 * A(j - 1, i - 1));
  return a;
}

MultiVector mv_exp(const MultiVector& a) {
  const int n = a.dim();
  int squarings = 0;
  double norm = a.max_abs() * static_cast<double>(std::max<std::size_t>(a.terms().size(), 1));
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const MultiVector b = a * std::ldexp(1.0, -squarings);
  MultiVector sum = MultiVector::scalar(n, 1.0);
  MultiVector term = MultiVector::scalar(n, 1.0);
  for (int k = 1; k < 40; ++k) {
    term = term * b * (1.0 / k);
    sum += term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

MultiVector vector_from(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  MultiVector out(n);
  for (int i = 0; i < n; ++i) out.add(Blade{1u << i}, v[i]);
  return out;
}

MultiVector chiral(int n) {
  require(n >= 1 && n <= kMaxDim, ErrorKind::usage, "chiral: dimension out of range");
  MultiVector g(n);
  g.add(Blade{(1u << n) - 1}, 1.0);
  return g;
}

// ---------------------------------------------------------------------------

namespace pauli {
Eigen::Matrix2cd sigma(int a) {
  const Complex i(0, 1);
  Eigen::Matrix2cd s;
  switch (a) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: fail(ErrorKind::usage, "Pauli index must be 0..3");
  }
  return s;
}
}  // namespace pauli

namespace {

std::vector<Eigen::MatrixXcd> full_gammas(int n) {
  const Complex i(0, 1);
  if (n == 1) return {i * pauli::sigma(3)};
  if (n == 2) return {i * pauli::sigma(1), i * pauli::sigma(2)};
  std::vector<Eigen::MatrixXcd> inner = full_gammas(n - 2);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(inner.front().rows(), inner.front().cols());
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(n);
  const Eigen::Matrix2cd s3 = pauli::sigma(3);
  for (const auto& g : inner) out.push_back(Eigen::kroneckerProduct(g, s3).eval());
  out.push_back(Eigen::kroneckerProduct(id, (i * pauli::sigma(2)).eval()).eval());
  out.push_back(Eigen::kroneckerProduct(id, (i * pauli::sigma(1)).eval()).eval());
  return out;
}

Eigen::MatrixXcd product_of(const std::vector<Eigen::MatrixXcd>& gammas, std::uint32_t mask, Eigen::Index size) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(size, size);
  for (std::uint32_t r = mask; r != 0; r &= r - 1) m = m * gammas[std::countr_zero(r)];
  return m;
}

}  // namespace

MatrixRep matrix_rep(int n, RepVariant variant) {
  require(n >= 1 && n <= 12, ErrorKind::usage, "matrix_rep: n must be in [1, 12]");
  MatrixRep rep;
  rep.dim = n;
  rep.gammas = full_gammas(n);
  if (variant == RepVariant::full || n % 2 == 0) return rep;

  // Odd n: the chiral element is central; normalize it to square to +1 and
  // keep its +1 eigenspace. In this construction it is diagonal.
  const Eigen::Index size = rep.gammas.front().rows();
  Eigen::MatrixXcd omega = product_of(rep.gammas, (1u << n) - 1, size);
  const Complex sq = (omega * omega)(0, 0);
  omega *= (sq.real() > 0) ? Complex(1, 0) : Complex(0, 1);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < size; ++k) {
    require(std::abs(omega(k, k).imag()) < 1e-12 && std::abs(std::abs(omega(k, k).real()) - 1) < 1e-12,
            ErrorKind::invariant, "chiral element is not diagonal in the recursive basis");
    if (omega(k, k).real() > 0) keep.push_back(k);
  }
  const auto half = static_cast<Eigen::Index>(keep.size());
  for (auto& g : rep.gammas) {
    Eigen::MatrixXcd h(half, half);
    for (Eigen::Index r = 0; r < half; ++r)
      for (Eigen::Index c = 0; c < half; ++c) h(r, c) = g(keep[r], keep[c]);
    g = std::move(h);
  }
  rep.half_summand = true;
  return rep;
}

template <class T>
static Eigen::MatrixXcd represent_impl(const MatrixRep& rep, const BasicMultiVector<T>& a) {
  require(a.dim() == rep.dim, ErrorKind::usage, "represent: dimension mismatch");
  const Eigen::Index size = rep.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (const auto& [b, c] : a.terms()) m += Complex(c) * product_of(rep.gammas, b.mask(), size);
  return m;
}

Eigen::MatrixXcd represent(const MatrixRep& rep, const MultiVector& a) { return represent_impl(rep, a); }
Eigen::MatrixXcd represent(const MatrixRep& rep, const ComplexMultiVector& a) { return represent_impl(rep, a); }

}  // namespace dwl::clifford
