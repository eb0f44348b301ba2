#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schmidtkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Default relative threshold below which singular values count as zero.
inline constexpr double kDefaultRankTol = 1e-10;
/// Default relative threshold under which two weights are considered equal.
inline constexpr double kDefaultDegeneracyTol = 1e-8;

/// Dense row-major complex matrix. Zero-sized shapes are allowed so that an
/// empty canonical representation (the zero operator) has a natural value.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_columns(std::size_t rows, std::span<const ComplexVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  bool all_finite() const noexcept;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> x);

double max_abs(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm2(std::span<const Complex> v);
ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);  // |a><b|

/// Multiplies `v` by the phase that makes its largest-magnitude component real
/// and positive. Near-ties in magnitude resolve to the lowest index.
void fix_phase(ComplexVector& v);
/// The unit phase `fix_phase` would multiply `v` by.
Complex gauge_phase(std::span<const Complex> v);

/// Lexicographic order on (real, imaginary) parts; components closer than
/// `eps` are treated as equal. True if `a` sorts before `b` (larger first).
bool lexicographically_before(std::span<const Complex> a, std::span<const Complex> b, double eps = 0.0);

struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

struct PolarDecomposition {
  ComplexMatrix isometry;       // partial isometry U, same shape as the operator
  ComplexMatrix positive_part;  // |A| = (A+ A)^{1/2}, cols x cols
};

/// A = sum_k weights[k] |left_k><right_k| over the nonzero singular values.
struct CanonicalRepresentation {
  std::vector<double> weights;  // descending, strictly positive
  ComplexMatrix left_vectors;   // rows x rank
  ComplexMatrix right_vectors;  // cols x rank

  std::size_t rank() const noexcept { return weights.size(); }
  ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws NotHermitian if max|m - m+| exceeds
/// tol * max(1, max|m|), NonFinite on NaN/Inf. Eigenvectors are phase-gauged
/// with `fix_phase`; exactly equal eigenvalues are ordered lexicographically.
HermitianEigenSystem hermitian_eig(const ComplexMatrix& m, double tol = kDefaultRankTol);

/// One-sided (Hestenes) Jacobi SVD truncated at tol * sigma_max. Right
/// vectors are phase-gauged; each left vector absorbs the matching phase.
CanonicalRepresentation svd(const ComplexMatrix& m, double tol = kDefaultRankTol);

PolarDecomposition polar_decompose(const ComplexMatrix& m, double tol = kDefaultRankTol);

std::size_t numerical_rank(const ComplexMatrix& m, double tol = kDefaultRankTol);

/// Partitions descending `weights` into maximal runs whose spread stays within
/// deg_tol * weights[0].
std::vector<std::vector<std::size_t>> group_degenerate(std::span<const double> weights, double deg_tol);

}  // namespace schmidtkit
