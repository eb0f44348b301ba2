#pragma once

#include <cstddef>
#include <vector>

#include "schmidtkit/linalg.hpp"
#include "schmidtkit/state.hpp"

namespace schmidtkit {

/// Psi = sum_i weights[i] * left_vectors[i] (x) right_vectors[i].
///
/// Vectors live in the composite spaces of the split's left and right
/// parties. Inside a degeneracy group they are one admissible choice among a
/// unitary family and carry no physical meaning on their own.
struct SchmidtDecomposition {
  Bipartition split;
  std::vector<double> weights;  // descending, > tol * weights[0]
  std::vector<ComplexVector> left_vectors;
  std::vector<ComplexVector> right_vectors;
  std::vector<std::vector<std::size_t>> degeneracy_groups;
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;

  std::size_t rank() const noexcept { return weights.size(); }
  /// Dimension of the kernel of the reduced density on each side; these
  /// directions do not appear in the decomposition.
  std::size_t left_zero_dim() const noexcept { return left_dim - rank(); }
  std::size_t right_zero_dim() const noexcept { return right_dim - rank(); }

  /// Flat row-major amplitudes of sum_i w_i l_i (x) r_i, in the split's
  /// party order (left parties first).
  ComplexVector reconstruct_matrix_form() const;
};

enum class Side { Left, Right };

struct DensityMatrix {
  ComplexMatrix matrix;
};

/// Polar pipeline: A = matricize(state, split) = U |A|; the eigenpairs
/// (lambda_i, v_i) of |A| give the weights and, through U, the left vectors
/// psi_i = U v_i. The state-space right vector is conj(v_i) because the
/// amplitude c_ij is read as the operator sum_ij c_ij |e_i><f_j|.
SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& split,
                                       double tol = kDefaultRankTol, double deg_tol = kDefaultDegeneracyTol);

/// Partial trace of |Psi><Psi| onto one side. Side::Left gives A A+; Side::Right
/// gives the matrix of A+ A under the conjugate-linear identification used
/// above, i.e. A^T conj(A), which is the physical reduced density on the right.
DensityMatrix reduced_density(const PureState& state, const Bipartition& split, Side side);

struct ExpectationPair {
  Complex direct;      // <Psi| 1 (x) B |Psi>
  Complex trace_form;  // Tr(rho_right B)
};

/// Both sides of <Psi|1 (x) B|Psi> = Tr(rho B) for B acting on the right side.
ExpectationPair expectation_consistency(const PureState& state, const Bipartition& split, const ComplexMatrix& b);

/// -sum w^2 ln w^2 in nats.
double entanglement_entropy(const SchmidtDecomposition& d);
double nats_to_bits(double nats);

struct DegeneracyGroup {
  std::vector<std::size_t> indices;
  double weight = 0.0;  // largest weight in the group
  std::size_t size() const noexcept { return indices.size(); }
};

struct DegeneracyReport {
  std::vector<DegeneracyGroup> groups;
  bool unique_up_to_phases = true;
  /// k for each group: the vectors may be rotated by any U(k) inside it.
  std::vector<std::size_t> unitary_freedom;
  std::size_t left_zero_dim = 0;
  std::size_t right_zero_dim = 0;
};

DegeneracyReport degeneracy_report(const SchmidtDecomposition& d, double deg_tol = kDefaultDegeneracyTol);

}  // namespace schmidtkit
