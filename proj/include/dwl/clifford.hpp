#pragma once

// Clifford algebra CLIF(R^n) with e_i e_i = -1, the spin group and its
// double cover of SO(n), and complex matrix representations.

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dwl/errors.hpp"

namespace dwl::clifford {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 31;

// Basis monomial e_{i1} e_{i2} ... e_{ip} with i1 < i2 < ... < ip, stored as a
// bit mask (bit i-1 set <=> e_i present). The empty mask is the scalar blade.
class Blade {
 public:
  constexpr Blade() = default;
  constexpr explicit Blade(std::uint32_t mask) : mask_(mask) {}

  // Builds the blade for an arbitrary product e_{j1} ... e_{jp} (1-based,
  // any order, repeats allowed) and returns the sign picked up by sorting
  // and cancelling repeats.
  static std::pair<Blade, int> from_product(const std::vector<int>& indices);

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int grade() const { return std::popcount(mask_); }
  std::vector<int> indices() const;

  friend constexpr bool operator==(Blade, Blade) = default;
  friend constexpr auto operator<=>(Blade, Blade) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Sign of the product of two sorted blades: one -1 per transposition needed
// to merge them and one -1 per repeated index (e_i e_i = -1).
constexpr int blade_product_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Complex& z) { return z == Complex{}; }
template <class T>
bool is_zero(const T& x) {
  return x == T{};
}

inline double magnitude(double x) { return x < 0 ? -x : x; }
inline double magnitude(const Complex& z) { return std::abs(z); }

// Element of CLIF(R^n) as a sparse map blade -> coefficient. Zero
// coefficients are never stored.
template <class T>
class BasicMultiVector {
 public:
  using Scalar = T;
  using Terms = std::map<Blade, T>;

  explicit BasicMultiVector(int dim = 0) : dim_(dim) {
    require(dim >= 0 && dim <= kMaxDim, ErrorKind::usage, "multivector dimension out of range");
  }

  static BasicMultiVector scalar(int dim, T value) {
    BasicMultiVector m(dim);
    m.add(Blade{}, value);
    return m;
  }
  // e_i, 1-based.
  static BasicMultiVector basis(int dim, int i) {
    require(i >= 1 && i <= dim, ErrorKind::usage, "basis index out of range");
    BasicMultiVector m(dim);
    m.add(Blade{1u << (i - 1)}, T(1));
    return m;
  }
  // coefficient * e_{j1} ... e_{jp} for any index order.
  static BasicMultiVector monomial(int dim, const std::vector<int>& indices, T coefficient = T(1)) {
    for (int i : indices)
      require(i >= 1 && i <= dim, ErrorKind::usage, "basis index out of range");
    auto [blade, sign] = Blade::from_product(indices);
    BasicMultiVector m(dim);
    m.add(blade, sign > 0 ? coefficient : -coefficient);
    return m;
  }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? T{} : it->second;
  }

  void add(Blade b, const T& value) {
    require((b.mask() >> dim_) == 0, ErrorKind::usage, "blade outside the algebra");
    if (dwl::clifford::is_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(b, value);
    if (!inserted) {
      it->second += value;
      if (dwl::clifford::is_zero(it->second)) terms_.erase(it);
    }
  }

  // Largest coefficient magnitude; used as the norm for tolerance checks.
  double max_abs() const {
    double m = 0;
    for (const auto& [b, c] : terms_) m = std::max(m, magnitude(c));
    return m;
  }

  BasicMultiVector& operator+=(const BasicMultiVector& o) {
    check_dim(o);
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  BasicMultiVector& operator-=(const BasicMultiVector& o) {
    check_dim(o);
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
  }
  BasicMultiVector& operator*=(const T& s) {
    if (dwl::clifford::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    std::erase_if(terms_, [](const auto& kv) { return dwl::clifford::is_zero(kv.second); });
    return *this;
  }

  friend BasicMultiVector operator+(BasicMultiVector a, const BasicMultiVector& b) { return a += b; }
  friend BasicMultiVector operator-(BasicMultiVector a, const BasicMultiVector& b) { return a -= b; }
  friend BasicMultiVector operator-(BasicMultiVector a) { return a *= T(-1); }
  friend BasicMultiVector operator*(BasicMultiVector a, const T& s) { return a *= s; }
  friend BasicMultiVector operator*(const T& s, BasicMultiVector a) { return a *= s; }

  // Clifford product.
  friend BasicMultiVector operator*(const BasicMultiVector& a, const BasicMultiVector& b) {
    a.check_dim(b);
    BasicMultiVector out(a.dim_);
    for (const auto& [ba, ca] : a.terms_) {
      for (const auto& [bb, cb] : b.terms_) {
        const int sign = blade_product_sign(ba.mask(), bb.mask());
        T c = ca * cb;
        out.add(Blade{ba.mask() ^ bb.mask()}, sign > 0 ? c : -c);
      }
    }
    return out;
  }

  friend bool operator==(const BasicMultiVector& a, const BasicMultiVector& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  void check_dim(const BasicMultiVector& o) const {
    require(dim_ == o.dim_, ErrorKind::usage,
            "multivector dimension mismatch: " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
  }

 private:
  int dim_;
  Terms terms_;
};

using MultiVector = BasicMultiVector<double>;
using ComplexMultiVector = BasicMultiVector<Complex>;

template <class T>
BasicMultiVector<T> mv_mul(const BasicMultiVector<T>& a, const BasicMultiVector<T>& b) {
  return a * b;
}

// The involution (e_{i1}...e_{ip})* = e_{ip}...e_{i1}: grade p picks up
// (-1)^{p(p-1)/2}.
template <class T>
BasicMultiVector<T> reverse(const BasicMultiVector<T>& a) {
  BasicMultiVector<T> out(a.dim());
  for (const auto& [b, c] : a.terms()) {
    const int p = b.grade();
    out.add(b, ((p * (p - 1) / 2) & 1) ? -c : c);
  }
  return out;
}

template <class T>
struct GradeSplit {
  BasicMultiVector<T> even;
  BasicMultiVector<T> odd;
};

template <class T>
GradeSplit<T> grade_split(const BasicMultiVector<T>& a) {
  GradeSplit<T> s{BasicMultiVector<T>(a.dim()), BasicMultiVector<T>(a.dim())};
  for (const auto& [b, c] : a.terms()) (b.grade() % 2 == 0 ? s.even : s.odd).add(b, c);
  return s;
}

template <class T>
BasicMultiVector<T> grade_part(const BasicMultiVector<T>& a, int grade) {
  BasicMultiVector<T> out(a.dim());
  for (const auto& [b, c] : a.terms())
    if (b.grade() == grade) out.add(b, c);
  return out;
}

// Exterior-algebra action on Lambda V (same blade storage, wedge semantics).
// ext(e_i) wedges e_i on the left, int(e_i) contracts it, and
// cliff(e_i) = ext(e_i) - int(e_i). This path never calls the Clifford
// product, so it serves as an independent route to it.
template <class T>
BasicMultiVector<T> exterior_mul(int i, const BasicMultiVector<T>& w) {
  const std::uint32_t bit = 1u << (i - 1);
  BasicMultiVector<T> out(w.dim());
  for (const auto& [b, c] : w.terms()) {
    if (b.mask() & bit) continue;
    // e_i ^ e_{j1} ^ ... : move e_i past every j < i.
    const int below = std::popcount(b.mask() & (bit - 1));
    out.add(Blade{b.mask() | bit}, (below & 1) ? -c : c);
  }
  return out;
}

template <class T>
BasicMultiVector<T> interior_mul(int i, const BasicMultiVector<T>& w) {
  const std::uint32_t bit = 1u << (i - 1);
  BasicMultiVector<T> out(w.dim());
  for (const auto& [b, c] : w.terms()) {
    if (!(b.mask() & bit)) continue;
    const int below = std::popcount(b.mask() & (bit - 1));
    out.add(Blade{b.mask() & ~bit}, (below & 1) ? -c : c);
  }
  return out;
}

// cliff(v) for grade-1 v = sum v_i e_i.
template <class T>
BasicMultiVector<T> cliff_vector(const BasicMultiVector<T>& v, const BasicMultiVector<T>& w) {
  v.check_dim(w);
  BasicMultiVector<T> out(w.dim());
  for (const auto& [b, c] : v.terms()) {
    require(b.grade() == 1, ErrorKind::usage, "cliff_vector expects a grade-1 element");
    const int i = std::countr_zero(b.mask()) + 1;
    out += (exterior_mul(i, w) - interior_mul(i, w)) * c;
  }
  return out;
}

// cliff(a) applied to w, extended multiplicatively from generators:
// cliff(e_{i1}...e_{ip}) = cliff(e_{i1}) o ... o cliff(e_{ip}).
template <class T>
BasicMultiVector<T> exterior_action(const BasicMultiVector<T>& a, const BasicMultiVector<T>& w) {
  a.check_dim(w);
  BasicMultiVector<T> out(w.dim());
  for (const auto& [b, c] : a.terms()) {
    BasicMultiVector<T> acc = w;
    const auto idx = b.indices();
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) acc = exterior_mul(*it, acc) - interior_mul(*it, acc);
    out += acc * c;
  }
  return out;
}

// ---- spin group -----------------------------------------------------------

inline constexpr double kSpinTolerance = 1e-12;

struct SpinCheck {
  bool ok = false;
  bool even = false;
  double unit_defect = 0;     // |g* g - 1|
  double offgrade_defect = 0; // largest non-vector part of g* e_i g
  std::string reason;         // empty when ok
};

SpinCheck is_spin(const MultiVector& g, double tol = kSpinTolerance);

// Element of SPIN(n); construction validates membership.
class SpinElement {
 public:
  explicit SpinElement(MultiVector g, double tol = kSpinTolerance);
  // Rescales g so that g* g = 1 before checking.
  static SpinElement normalized(const MultiVector& g, double tol = kSpinTolerance);

  const MultiVector& value() const { return value_; }
  int dim() const { return value_.dim(); }

  friend SpinElement operator*(const SpinElement& a, const SpinElement& b);
  friend SpinElement operator-(const SpinElement& a) { return SpinElement(-a.value_); }

 private:
  MultiVector value_;
};

// Orthogonal n x n matrix with unit determinant.
class SOMatrix {
 public:
  explicit SOMatrix(Eigen::MatrixXd m, double tol = 1e-10);
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

// tau(g) v = g v g*; column j holds the coefficients of g e_j g*.
SOMatrix spin_to_so(const SpinElement& g);

// Lie algebra map so(n) -> even part: returns the bivector a with
// a v - v a = A v for every vector v, i.e. a = 1/4 sum_{ij} (A e_i, e_j) e_i e_j.
MultiVector so_algebra_to_clifford(const Eigen::MatrixXd& A, double tol = 1e-12);

// Power series exponential with scaling and squaring.
MultiVector mv_exp(const MultiVector& a);

// Vector (grade-1) element from coordinates.
MultiVector vector_from(const Eigen::VectorXd& v);

// ---- chiral element and matrix representations -----------------------------

// Gamma = e_1 e_2 ... e_n.
MultiVector chiral(int n);

struct MatrixRep {
  int dim = 0;
  bool half_summand = false;         // odd n restricted to one irreducible summand
  std::vector<Eigen::MatrixXcd> gammas;

  Eigen::Index size() const { return gammas.empty() ? 0 : gammas.front().rows(); }
};

enum class RepVariant { full, half_summand };

// Recursive representation built from Pauli matrices:
//   e_j -> gamma_j (x) sigma_3,  e_{n+1} -> 1 (x) i sigma_2,  e_{n+2} -> 1 (x) i sigma_1,
// with bases n = 1: {i sigma_3} and n = 2: {i sigma_1, i sigma_2}. The factor i keeps
// gamma_j^2 = -1. Matrices have size 2^ceil(n/2); for odd n the half_summand
// variant restricts to the +1 eigenspace of the (central) normalized chiral
// element and has size 2^((n-1)/2).
MatrixRep matrix_rep(int n, RepVariant variant = RepVariant::full);

Eigen::MatrixXcd represent(const MatrixRep& rep, const MultiVector& a);
Eigen::MatrixXcd represent(const MatrixRep& rep, const ComplexMultiVector& a);

namespace pauli {
Eigen::Matrix2cd sigma(int a);  // a = 0..3
}

}  // namespace dwl::clifford
