#include "schmidtkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

namespace {

constexpr int kMaxSweeps = 80;
constexpr double kEps = 2.220446049250313e-16;

void require_finite(const ComplexMatrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix shapes differ");
}

// Unitary 2x2 rotation J with J+ [[a, g], [g*, b]] J diagonal.
struct Rotation {
  Complex pp, pq, qp, qq;
};

Rotation jacobi_rotation(double a, double b, Complex g) {
  const double mag = std::abs(g);
  const Complex e = g / mag;
  const double tau = (b - a) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s * e, -s * std::conj(e), c};
}

// m <- m J on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = mp * j.pp + mq * j.qp;
    m(k, q) = mp * j.pq + mq * j.qq;
  }
}

// m <- J+ m on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = std::conj(j.pp) * mp + std::conj(j.qp) * mq;
    m(q, k) = std::conj(j.pq) * mp + std::conj(j.qq) * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) s += std::norm(m(r, c));
  return std::sqrt(s);
}

double column_norm_sq(const ComplexMatrix& m, std::size_t c) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += std::norm(m(r, c));
  return s;
}

Complex column_inner(const ComplexMatrix& m, std::size_t a, std::size_t b) {
  Complex s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += std::conj(m(r, a)) * m(r, b);
  return s;
}

// Modified Gram-Schmidt, applied twice, over the first `count` columns.
void reorthonormalize(ComplexMatrix& m, std::size_t count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < count; ++c) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        const Complex proj = column_inner(m, prev, c);
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) -= proj * m(r, prev);
      }
      const double n = std::sqrt(column_norm_sq(m, c));
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) /= n;
    }
  }
}

struct RawSvd {
  std::vector<double> sigma;
  ComplexMatrix left;   // rows x k, columns normalized only where sigma > 0
  ComplexMatrix right;  // cols x k, orthonormal
};

// Hestenes one-sided Jacobi for rows >= cols.
RawSvd one_sided_jacobi(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_norm_sq(w, p);
        const double beta = column_norm_sq(w, q);
        const Complex gamma = column_inner(w, p, q);
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation j = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(w, p, q, j);
        rotate_columns(v, p, q, j);
      }
    }
    if (!rotated) break;
  }
  RawSvd out;
  out.sigma.resize(n);
  out.left = std::move(w);
  out.right = std::move(v);
  for (std::size_t c = 0; c < n; ++c) {
    const double s = std::sqrt(column_norm_sq(out.left, c));
    out.sigma[c] = s;
    if (s > 0.0)
      for (std::size_t r = 0; r < out.left.rows(); ++r) out.left(r, c) /= s;
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(entries_.size()));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::size_t rows, std::span<const ComplexVector> columns) {
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> values) {
  if (values.size() != rows_) throw Error(ErrorKind::ShapeMismatch, "column length differs from row count");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& x : out.entries_) x = std::conj(x);
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "inner dimensions differ in product");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& x : out.entries_) x *= s;
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "vector length differs from column count");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    out[i] = s;
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.entries()) best = std::max(best, std::abs(z));
  return best;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

Complex trace(const ComplexMatrix& m) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
  return s;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "inner product of unequal lengths");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

Complex gauge_phase(std::span<const Complex> v) {
  double largest = 0.0;
  for (const auto& z : v) largest = std::max(largest, std::abs(z));
  if (largest == 0.0) return 1.0;
  for (const auto& z : v) {
    const double mag = std::abs(z);
    if (mag >= largest * (1.0 - 1e-9)) return std::conj(z) / mag;
  }
  return 1.0;
}

void fix_phase(ComplexVector& v) {
  const Complex phase = gauge_phase(v);
  for (auto& z : v) z *= phase;
}

bool lexicographically_before(std::span<const Complex> a, std::span<const Complex> b, double eps) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i].real() - b[i].real()) > eps) return a[i].real() > b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > eps) return a[i].imag() > b[i].imag();
  }
  return false;
}

HermitianEigenSystem hermitian_eig(const ComplexMatrix& m, double tol) {
  require_finite(m);
  if (!m.square()) throw Error(ErrorKind::ShapeMismatch, "eigendecomposition needs a square matrix");
  const double scale = std::max(1.0, max_abs(m));
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol * scale)
    throw Error(ErrorKind::NotHermitian, "hermiticity residual " + std::to_string(asym) + " exceeds tolerance");

  const std::size_t n = m.rows();
  const double magnitude = max_abs(m);
  const double unscale = magnitude > 0.0 ? magnitude : 1.0;
  ComplexMatrix a = Complex(0.5 / unscale) * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double total = frobenius_norm(a);
  const double skip = std::max(1e-300, kEps * total / (10.0 * static_cast<double>(std::max<std::size_t>(n, 1))));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kEps * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        if (std::abs(g) <= skip) continue;
        const Rotation j = jacobi_rotation(a(p, p).real(), a(q, q).real(), g);
        rotate_columns(a, p, q, j);
        rotate_rows(a, p, q, j);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, j);
      }
    }
  }

  std::vector<ComplexVector> vectors(n);
  for (std::size_t k = 0; k < n; ++k) {
    vectors[k] = v.column(k);
    fix_phase(vectors[k]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double ex = a(x, x).real();
    const double ey = a(y, y).real();
    if (ex != ey) return ex > ey;
    return lexicographically_before(vectors[x], vectors[y]);
  });

  HermitianEigenSystem out;
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real() * unscale);
    out.eigenvectors.set_column(k, vectors[order[k]]);
  }
  return out;
}

CanonicalRepresentation svd(const ComplexMatrix& m, double tol) {
  require_finite(m);
  CanonicalRepresentation out;
  out.left_vectors = ComplexMatrix(m.rows(), 0);
  out.right_vectors = ComplexMatrix(m.cols(), 0);
  if (m.rows() == 0 || m.cols() == 0 || max_abs(m) == 0.0) return out;

  // Work at unit scale so squared column norms neither underflow nor overflow.
  const double scale = max_abs(m);
  const ComplexMatrix unit = Complex(1.0 / scale) * m;
  const bool tall = m.rows() >= m.cols();
  RawSvd raw = one_sided_jacobi(tall ? unit : unit.adjoint());
  for (auto& s : raw.sigma) s *= scale;
  // For a wide matrix, m+ = sum s |x><y| means m = sum s |y><x|.
  ComplexMatrix left = tall ? std::move(raw.left) : std::move(raw.right);
  ComplexMatrix right = tall ? std::move(raw.right) : std::move(raw.left);

  const std::size_t k = raw.sigma.size();
  const double sigma_max = *std::max_element(raw.sigma.begin(), raw.sigma.end());
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < k; ++c)
    if (raw.sigma[c] > tol * sigma_max) kept.push_back(c);

  std::vector<ComplexVector> lefts, rights;
  for (std::size_t c : kept) {
    ComplexVector r = right.column(c);
    ComplexVector l = left.column(c);
    const Complex phase = gauge_phase(r);
    for (auto& z : r) z *= phase;
    for (auto& z : l) z *= phase;
    lefts.push_back(std::move(l));
    rights.push_back(std::move(r));
  }
  std::vector<std::size_t> order(kept.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double sx = raw.sigma[kept[x]];
    const double sy = raw.sigma[kept[y]];
    if (sx != sy) return sx > sy;
    return lexicographically_before(rights[x], rights[y]);
  });

  out.left_vectors = ComplexMatrix(m.rows(), kept.size());
  out.right_vectors = ComplexMatrix(m.cols(), kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.weights.push_back(raw.sigma[kept[order[i]]]);
    out.left_vectors.set_column(i, lefts[order[i]]);
    out.right_vectors.set_column(i, rights[order[i]]);
  }
  // Columns built as w / sigma lose orthogonality for small sigma.
  reorthonormalize(tall ? out.left_vectors : out.right_vectors, order.size());
  return out;
}

ComplexMatrix CanonicalRepresentation::reconstruct() const {
  ComplexMatrix out(left_vectors.rows(), right_vectors.rows());
  for (std::size_t k = 0; k < weights.size(); ++k)
    for (std::size_t i = 0; i < out.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j)
        out(i, j) += weights[k] * left_vectors(i, k) * std::conj(right_vectors(j, k));
  return out;
}

PolarDecomposition polar_decompose(const ComplexMatrix& m, double tol) {
  const CanonicalRepresentation rep = svd(m, tol);
  PolarDecomposition out{ComplexMatrix(m.rows(), m.cols()), ComplexMatrix(m.cols(), m.cols())};
  for (std::size_t k = 0; k < rep.rank(); ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out.isometry(i, j) += rep.left_vectors(i, k) * std::conj(rep.right_vectors(j, k));
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out.positive_part(i, j) += rep.weights[k] * rep.right_vectors(i, k) * std::conj(rep.right_vectors(j, k));
  }
  return out;
}

std::size_t numerical_rank(const ComplexMatrix& m, double tol) { return svd(m, tol).rank(); }

std::vector<std::vector<std::size_t>> group_degenerate(std::span<const double> weights, double deg_tol) {
  std::vector<std::vector<std::size_t>> groups;
  if (weights.empty()) return groups;
  const double scale = deg_tol * weights.front();
  std::size_t anchor = 0;
  groups.push_back({0});
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[anchor] - weights[i] <= scale) {
      groups.back().push_back(i);
    } else {
      anchor = i;
      groups.push_back({i});
    }
  }
  return groups;
}

}  // namespace schmidtkit
