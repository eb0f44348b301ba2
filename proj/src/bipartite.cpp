#include "schmidtkit/bipartite.hpp"

#include <cmath>
#include <numbers>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

ComplexVector SchmidtDecomposition::reconstruct_matrix_form() const {
  ComplexVector out(left_dim * right_dim);
  for (std::size_t k = 0; k < weights.size(); ++k)
    for (std::size_t i = 0; i < left_dim; ++i)
      for (std::size_t j = 0; j < right_dim; ++j)
        out[i * right_dim + j] += weights[k] * left_vectors[k][i] * right_vectors[k][j];
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& split, double tol,
                                       double deg_tol) {
  const ComplexMatrix a = matricize(state, split);
  const PolarDecomposition polar = polar_decompose(a, tol);
  const std::size_t rank = numerical_rank(polar.positive_part, tol);
  const HermitianEigenSystem eig = hermitian_eig(polar.positive_part, tol);

  SchmidtDecomposition out;
  out.split = split;
  out.left_dim = a.rows();
  out.right_dim = a.cols();
  for (std::size_t k = 0; k < rank; ++k) {
    const ComplexVector v = eig.eigenvectors.column(k);
    ComplexVector left = polar.isometry * std::span<const Complex>(v);
    const double n = norm2(left);
    for (auto& z : left) z /= n;
    ComplexVector right(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) right[j] = std::conj(v[j]);
    out.weights.push_back(eig.eigenvalues[k]);
    out.left_vectors.push_back(std::move(left));
    out.right_vectors.push_back(std::move(right));
  }
  out.degeneracy_groups = group_degenerate(out.weights, deg_tol);
  return out;
}

DensityMatrix reduced_density(const PureState& state, const Bipartition& split, Side side) {
  const ComplexMatrix a = matricize(state, split);
  if (side == Side::Left) return {a * a.adjoint()};
  return {a.transpose() * a.conjugate()};
}

ExpectationPair expectation_consistency(const PureState& state, const Bipartition& split, const ComplexMatrix& b) {
  const ComplexMatrix a = matricize(state, split);
  if (b.rows() != a.cols() || b.cols() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "observable must act on the right factor of dimension " +
                                                  std::to_string(a.cols()));
  // ((1 (x) B) Psi)_{ij} = sum_j' B_{jj'} c_{ij'}
  const ComplexMatrix applied = a * b.transpose();
  Complex direct = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) direct += std::conj(a(i, j)) * applied(i, j);
  const ComplexMatrix rho = reduced_density(state, split, Side::Right).matrix;
  return {direct, trace(rho * b)};
}

double entanglement_entropy(const SchmidtDecomposition& d) {
  // Renormalize so rounding that pushes a weight past 1 cannot make a term
  // (and hence the entropy) negative.
  double total = 0.0;
  for (double w : d.weights) total += w * w;
  if (total == 0.0) return 0.0;
  double s = 0.0;
  for (double w : d.weights) {
    const double p = w * w / total;
    if (p > 0.0 && p < 1.0) s -= p * std::log(p);
  }
  return s;
}

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

DegeneracyReport degeneracy_report(const SchmidtDecomposition& d, double deg_tol) {
  DegeneracyReport report;
  for (auto& indices : group_degenerate(d.weights, deg_tol)) {
    DegeneracyGroup g;
    g.weight = d.weights[indices.front()];
    g.indices = std::move(indices);
    report.unitary_freedom.push_back(g.size());
    if (g.size() > 1) report.unique_up_to_phases = false;
    report.groups.push_back(std::move(g));
  }
  report.left_zero_dim = d.left_zero_dim();
  report.right_zero_dim = d.right_zero_dim();
  return report;
}

}  // namespace schmidtkit
