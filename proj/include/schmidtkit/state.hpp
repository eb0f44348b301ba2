#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "schmidtkit/linalg.hpp"

namespace schmidtkit {

/// Largest amplitude count a dense state may hold.
inline constexpr std::size_t kMaxStateSize = std::size_t{1} << 20;

/// Unit-norm amplitude tensor over an ordered list of factor dimensions.
///
/// Amplitudes are stored flat in row-major order: the last party's index
/// varies fastest. Values are immutable; every operation returns a new state.
class PureState {
 public:
  /// Rescales `amps` to unit norm. Throws ShapeMismatch when the length does
  /// not equal the product of `dims` (or a dimension is zero), ZeroVector when
  /// the norm is below 1e-300, NonFinite on NaN/Inf input.
  static PureState normalize(std::span<const Complex> amps, std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::span<const Complex> amps() const noexcept { return amps_; }
  std::size_t parties() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return amps_.size(); }

 private:
  PureState(std::vector<std::size_t> dims, std::vector<Complex> amps)
      : dims_(std::move(dims)), amps_(std::move(amps)) {}

  std::vector<std::size_t> dims_;
  std::vector<Complex> amps_;
};

inline PureState normalize(std::span<const Complex> amps, std::vector<std::size_t> dims) {
  return PureState::normalize(amps, std::move(dims));
}

/// Split of the parties into two ordered, nonempty, complementary sides.
/// Party order within each side is kept as given.
struct Bipartition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  /// {party} | all others in increasing order.
  static Bipartition single(std::size_t party, std::size_t parties);
  /// Throws InvalidBipartition unless the sides partition 0..parties-1.
  void validate(std::size_t parties) const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

struct RandomSeed {
  std::uint64_t value = 0;
};

/// Rows follow the composite index of `split.left`, columns that of
/// `split.right`, each row-major in the listed party order.
ComplexMatrix matricize(const PureState& state, const Bipartition& split);

/// Applies `u` to one tensor slot. Throws DimensionMismatch when `u` is not
/// dims[party] square, NotUnitary when max|u+u - 1| > 1e-10.
PureState apply_local_unitary(const PureState& state, std::size_t party, const ComplexMatrix& u);

/// Raw amplitudes of (1 (x) op (x) 1) applied to `state` at `party`; `op`
/// need not be unitary, so the result is not renormalized.
ComplexVector apply_local_operator(const PureState& state, std::size_t party, const ComplexMatrix& op);

/// Haar-uniform state: i.i.d. complex standard normal amplitudes, normalized.
PureState random_state(std::vector<std::size_t> dims, RandomSeed seed);

/// sum_i coeffs[i] |i>|i>...|i> over dims.size() parties.
PureState make_correlated_state(std::span<const Complex> coeffs, std::vector<std::size_t> dims);
PureState make_correlated_state(std::span<const Complex> coeffs, std::size_t dim, std::size_t parties);

/// Tensor product of the given factors (each normalized first).
PureState product_state(std::span<const ComplexVector> factors);

// Fixture states.
PureState singlet_state();
PureState ghz_state(std::size_t parties, std::size_t dim = 2);
PureState w_state(std::size_t parties);

/// Row-major strides for `dims` (last party stride 1).
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims);

}  // namespace schmidtkit
