#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "schmidtkit/linalg.hpp"
#include "schmidtkit/state.hpp"

namespace schmidtkit {

/// Default tolerance for multipartite verdicts.
inline constexpr double kDefaultMultipartiteTol = 1e-8;

enum class SchmidtVerdict { Exists, NotExists, Indeterminate };
enum class ProductVerdict { IsProduct, NotProduct };

std::string_view to_string(SchmidtVerdict v);
std::string_view to_string(ProductVerdict v);

enum class WitnessKind {
  /// Some single-party-vs-rest split has a different weight spectrum than {0}|rest.
  MarginalSpectrumMismatch,
  /// The vector conditioned on a party-0 basis vector is entangled.
  EntangledConditionalVector,
  /// Recovered factors for one party are not orthonormal.
  NonOrthogonalFactors,
  /// Every structural check passed but the assembled sum misses the state.
  ReconstructionFailure,
};

std::string_view to_string(WitnessKind k);

struct ExistenceWitness {
  WitnessKind kind = WitnessKind::EntangledConditionalVector;
  /// For EntangledConditionalVector the split is over the parties of the
  /// conditional vector (original indices, party 0 excluded). Otherwise it is
  /// a bipartition of the full state.
  Bipartition split;
  std::size_t weight_index = 0;
  /// Numerical rank of the offending matricization when the witness is a rank
  /// obstruction; always >= 2 when present.
  std::optional<std::size_t> rank;
  /// Spectrum deviation, second-to-first weight ratio at the witness split,
  /// Gram deviation or residual, depending on kind.
  double magnitude = 0.0;
};

/// Homogeneous form Psi = sum_i weights[i] * party_bases[0][i] (x) ... (x) party_bases[n-1][i].
struct GeneralizedSchmidtResult {
  SchmidtVerdict verdict = SchmidtVerdict::Indeterminate;
  std::vector<double> weights;
  std::vector<std::vector<ComplexVector>> party_bases;  // [party][index]
  std::optional<ExistenceWitness> witness;
  std::vector<RandomSeed> seeds_used;
  double residual = 0.0;  // ||Psi - sum||_2 when Exists
};

struct ProductWitness {
  Bipartition split;  // {0..k} | {k+1..n-1}
  std::size_t rank = 0;
};

struct ProductTestResult {
  ProductVerdict verdict = ProductVerdict::NotProduct;
  std::vector<ComplexVector> factors;
  std::optional<ProductWitness> witness;
  double residual = 0.0;  // ||Psi - (x) factors||_2 when IsProduct
};

struct MixtureSpec {
  std::vector<double> weights;
  std::vector<ComplexVector> components;
};

struct CountingRecord {
  std::uint64_t unknowns = 0;
  std::uint64_t equations = 0;
  bool overdetermined = false;
};

/// Decides whether a state on n >= 3 parties admits a homogeneous Schmidt
/// form and builds it when it does.
///
/// The candidate weights come from the {0}|rest split; every other
/// single-party split must share that spectrum. A party-0 basis is then fixed:
/// the left Schmidt vectors when the spectrum is non-degenerate, otherwise the
/// joint eigenbasis of rho_0 and of the operator obtained by contracting
/// |Psi><Psi| against a seeded random Hermitian observable on party 1.
/// Conditioning Psi on each basis vector must leave a product state, whose
/// factors must be orthonormal per party, and the assembled sum must
/// reproduce Psi within `tol`. Each seed runs the construction independently;
/// Exists requires all of them to succeed and agree, NotExists requires all of
/// them to fail, and anything else is Indeterminate.
///
/// Throws TooFewParties when n < 3. An empty seed list uses two defaults.
GeneralizedSchmidtResult generalized_schmidt_test(const PureState& state, double tol = kDefaultMultipartiteTol,
                                                  std::span<const RandomSeed> seeds = {});

/// Rank peeling: party 0 vs rest must have numerical rank 1; its left vector
/// is the party-0 factor and the right vector is the remaining state.
ProductTestResult product_test(const PureState& state, double tol = kDefaultMultipartiteTol);

/// 1 - sum_i weights[i] |<psi|phi_i>|^2. Throws NotNormalized when psi is not
/// unit within 1e-10, InvalidMixture when the weights do not sum to 1 within
/// 1e-12 or the components are not orthonormal within 1e-10,
/// DimensionMismatch when lengths differ.
double pure_vs_mixture_gap(std::span<const Complex> psi, const MixtureSpec& mix);

/// Size of the product-ansatz system for n parties of dimension N.
CountingRecord counting_check(std::uint64_t dim, std::uint64_t parties);
/// Same count for arbitrary dims: sum(dims) unknowns, prod(dims) equations.
CountingRecord counting_check(std::span<const std::size_t> dims);

/// Seeds used when the caller supplies none.
std::vector<RandomSeed> default_seeds();

}  // namespace schmidtkit
