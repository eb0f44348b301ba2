#include "schmidtkit/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

namespace {

std::size_t checked_size(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(ErrorKind::ShapeMismatch, "a state needs at least one party");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorKind::ShapeMismatch, "factor dimensions must be positive");
    if (total > kMaxStateSize / d)
      throw Error(ErrorKind::ShapeMismatch, "product of dimensions exceeds " + std::to_string(kMaxStateSize));
    total *= d;
  }
  return total;
}

}  // namespace

PureState PureState::normalize(std::span<const Complex> amps, std::vector<std::size_t> dims) {
  const std::size_t total = checked_size(dims);
  if (amps.size() != total)
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(total) + " amplitudes, got " + std::to_string(amps.size()));
  for (const auto& z : amps)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::NonFinite, "amplitude is NaN or Inf");
  // Scale before summing squares so tiny or huge inputs neither underflow nor overflow.
  double largest = 0.0;
  for (const auto& z : amps) largest = std::max(largest, std::abs(z));
  if (largest < 1e-300) throw Error(ErrorKind::ZeroVector, "state has zero norm");
  // Extended precision for the norm and the division keeps simple inputs
  // correctly rounded, e.g. 1/sqrt(2) for the singlet and 0.6, 0.8 for (3, 4).
  long double s = 0.0L;
  for (const auto& z : amps) {
    const long double re = z.real() / largest, im = z.imag() / largest;
    s += re * re + im * im;
  }
  const long double n = static_cast<long double>(largest) * std::sqrt(s);
  if (n < 1e-300L) throw Error(ErrorKind::ZeroVector, "state has zero norm");
  std::vector<Complex> out(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k)
    out[k] = {static_cast<double>(amps[k].real() / n), static_cast<double>(amps[k].imag() / n)};
  return PureState(std::move(dims), std::move(out));
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

Bipartition Bipartition::single(std::size_t party, std::size_t parties) {
  Bipartition b;
  b.left = {party};
  for (std::size_t k = 0; k < parties; ++k)
    if (k != party) b.right.push_back(k);
  return b;
}

void Bipartition::validate(std::size_t parties) const {
  if (left.empty() || right.empty()) throw Error(ErrorKind::InvalidBipartition, "both sides must be nonempty");
  std::vector<int> seen(parties, 0);
  for (const auto* side : {&left, &right}) {
    for (std::size_t p : *side) {
      if (p >= parties)
        throw Error(ErrorKind::InvalidBipartition, "party " + std::to_string(p) + " out of range");
      if (seen[p]++) throw Error(ErrorKind::InvalidBipartition, "party " + std::to_string(p) + " listed twice");
    }
  }
  if (left.size() + right.size() != parties)
    throw Error(ErrorKind::InvalidBipartition, "sides do not cover every party");
}

ComplexMatrix matricize(const PureState& state, const Bipartition& split) {
  split.validate(state.parties());
  const auto& dims = state.dims();
  const auto strides = strides_of(dims);

  std::size_t rows = 1, cols = 1;
  for (std::size_t p : split.left) rows *= dims[p];
  for (std::size_t p : split.right) cols *= dims[p];

  // Weight of each party's digit inside the row or column composite index.
  std::vector<std::size_t> row_weight(dims.size(), 0), col_weight(dims.size(), 0);
  std::size_t w = 1;
  for (std::size_t k = split.left.size(); k-- > 0;) {
    row_weight[split.left[k]] = w;
    w *= dims[split.left[k]];
  }
  w = 1;
  for (std::size_t k = split.right.size(); k-- > 0;) {
    col_weight[split.right[k]] = w;
    w *= dims[split.right[k]];
  }

  ComplexMatrix m(rows, cols);
  const auto amps = state.amps();
  for (std::size_t flat = 0; flat < amps.size(); ++flat) {
    std::size_t r = 0, c = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      const std::size_t digit = (flat / strides[p]) % dims[p];
      r += digit * row_weight[p];
      c += digit * col_weight[p];
    }
    m(r, c) = amps[flat];
  }
  return m;
}

ComplexVector apply_local_operator(const PureState& state, std::size_t party, const ComplexMatrix& op) {
  if (party >= state.parties()) throw Error(ErrorKind::InvalidArgument, "party index out of range");
  const std::size_t d = state.dims()[party];
  if (op.rows() != d || op.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "operator must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!op.all_finite()) throw Error(ErrorKind::NonFinite, "operator has NaN or Inf entries");

  const std::size_t inner = strides_of(state.dims())[party];
  const std::size_t outer = state.size() / (inner * d);
  const auto in = state.amps();
  ComplexVector out(in.size());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * d * inner + i;
      for (std::size_t row = 0; row < d; ++row) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += op(row, k) * in[base + k * inner];
        out[base + row * inner] = s;
      }
    }
  return out;
}

PureState apply_local_unitary(const PureState& state, std::size_t party, const ComplexMatrix& u) {
  if (party >= state.parties()) throw Error(ErrorKind::InvalidArgument, "party index out of range");
  const std::size_t d = state.dims()[party];
  if (u.rows() != d || u.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "operator must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!u.all_finite()) throw Error(ErrorKind::NonFinite, "operator has NaN or Inf entries");
  if (max_abs(u.adjoint() * u - ComplexMatrix::identity(d)) > 1e-10)
    throw Error(ErrorKind::NotUnitary, "operator is not unitary within 1e-10");
  return PureState::normalize(apply_local_operator(state, party, u), state.dims());
}

PureState random_state(std::vector<std::size_t> dims, RandomSeed seed) {
  const std::size_t total = checked_size(dims);
  std::mt19937_64 engine(seed.value);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(total);
  for (auto& z : amps) {
    const double re = gauss(engine);
    const double im = gauss(engine);
    z = {re, im};
  }
  return PureState::normalize(amps, std::move(dims));
}

PureState make_correlated_state(std::span<const Complex> coeffs, std::vector<std::size_t> dims) {
  if (dims.size() < 2) throw Error(ErrorKind::InvalidArgument, "a correlated state needs at least two parties");
  const std::size_t total = checked_size(dims);
  for (std::size_t d : dims)
    if (coeffs.size() > d)
      throw Error(ErrorKind::CoeffsExceedDimension,
                  std::to_string(coeffs.size()) + " coefficients exceed factor dimension " + std::to_string(d));
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  if (std::abs(s - 1.0) > 1e-12)
    throw Error(ErrorKind::NotNormalized, "sum of |c_i|^2 is " + std::to_string(s) + ", expected 1");

  const auto strides = strides_of(dims);
  std::size_t diagonal_step = 0;
  for (std::size_t st : strides) diagonal_step += st;
  std::vector<Complex> amps(total);
  for (std::size_t i = 0; i < coeffs.size(); ++i) amps[i * diagonal_step] = coeffs[i];
  return PureState::normalize(amps, std::move(dims));
}

PureState make_correlated_state(std::span<const Complex> coeffs, std::size_t dim, std::size_t parties) {
  return make_correlated_state(coeffs, std::vector<std::size_t>(parties, dim));
}

PureState product_state(std::span<const ComplexVector> factors) {
  std::vector<std::size_t> dims;
  std::vector<Complex> amps{1.0};
  for (const auto& f : factors) {
    const auto unit = PureState::normalize(f, {f.size()});
    std::vector<Complex> next;
    next.reserve(amps.size() * f.size());
    for (const auto& a : amps)
      for (const auto& b : unit.amps()) next.push_back(a * b);
    amps = std::move(next);
    dims.push_back(f.size());
  }
  return PureState::normalize(amps, std::move(dims));
}

PureState singlet_state() {
  const std::vector<Complex> amps{0.0, 1.0, -1.0, 0.0};
  return PureState::normalize(amps, {2, 2});
}

PureState ghz_state(std::size_t parties, std::size_t dim) {
  if (parties < 2 || dim < 2) throw Error(ErrorKind::InvalidArgument, "GHZ needs parties >= 2 and dim >= 2");
  const std::vector<Complex> coeffs(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return make_correlated_state(coeffs, dim, parties);
}

PureState w_state(std::size_t parties) {
  if (parties < 2) throw Error(ErrorKind::InvalidArgument, "W state needs at least two parties");
  const std::vector<std::size_t> dims(parties, 2);
  const std::size_t total = checked_size(dims);
  std::vector<Complex> amps(total);
  for (std::size_t k = 0; k < parties; ++k) amps[std::size_t{1} << k] = 1.0;
  return PureState::normalize(amps, dims);
}

}  // namespace schmidtkit
