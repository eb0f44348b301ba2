#include "schmidtkit/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <variant>

#include "schmidtkit/error.hpp"

namespace schmidtkit {

std::string_view to_string(SchmidtVerdict v) {
  switch (v) {
    case SchmidtVerdict::Exists: return "Exists";
    case SchmidtVerdict::NotExists: return "NotExists";
    case SchmidtVerdict::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

std::string_view to_string(ProductVerdict v) {
  return v == ProductVerdict::IsProduct ? "IsProduct" : "NotProduct";
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::MarginalSpectrumMismatch: return "MarginalSpectrumMismatch";
    case WitnessKind::EntangledConditionalVector: return "EntangledConditionalVector";
    case WitnessKind::NonOrthogonalFactors: return "NonOrthogonalFactors";
    case WitnessKind::ReconstructionFailure: return "ReconstructionFailure";
  }
  return "Unknown";
}

namespace {

// Overlap of two bases agreeing up to per-index phases.
constexpr double kBasisAgreement = 1e-6;
// Orthonormal vectors differ by at least ~1/sqrt(d) somewhere; this only
// has to absorb round-off when ordering vectors inside a degenerate block.
constexpr double kOrderingEps = 1e-6;

ComplexVector kron(std::span<const ComplexVector> factors) {
  ComplexVector out{1.0};
  for (const auto& f : factors) {
    ComplexVector next;
    next.reserve(out.size() * f.size());
    for (const auto& a : out)
      for (const auto& b : f) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& engine) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      g(r, c) = {re, im};
    }
  return 0.5 * (g + g.adjoint());
}

struct Candidate {
  std::vector<double> weights;
  std::vector<std::vector<ComplexVector>> bases;  // [party][index]
  double residual = 0.0;
};

using Attempt = std::variant<Candidate, ExistenceWitness>;

std::vector<ComplexVector> party0_basis(const PureState& state, const ComplexMatrix& a,
                                        std::span<const double> weights, double tol, RandomSeed seed) {
  const std::size_t r = weights.size();
  const auto groups = group_degenerate(weights, tol);
  std::vector<ComplexVector> basis;

  if (groups.size() == r) {
    const CanonicalRepresentation rep = svd(a, tol);
    for (std::size_t i = 0; i < std::min(r, rep.rank()); ++i) basis.push_back(rep.left_vectors.column(i));
  } else {
    const ComplexMatrix rho = a * a.adjoint();
    const HermitianEigenSystem eig = hermitian_eig(rho, tol);
    std::mt19937_64 engine(seed.value);
    const ComplexMatrix probe = random_hermitian(state.dims()[1], engine);
    const ComplexMatrix shifted = matricize(PureState::normalize(apply_local_operator(state, 1, probe), state.dims()),
                                            Bipartition::single(0, state.parties()));
    // Normalization rescales the contraction uniformly; only its eigenbasis matters.
    const ComplexMatrix x = shifted * a.adjoint();
    const ComplexMatrix xh = 0.5 * (x + x.adjoint());

    for (const auto& group : groups) {
      if (group.size() == 1) {
        basis.push_back(eig.eigenvectors.column(group.front()));
        continue;
      }
      std::vector<ComplexVector> cols;
      for (std::size_t idx : group) cols.push_back(eig.eigenvectors.column(idx));
      const ComplexMatrix q = ComplexMatrix::from_columns(a.rows(), cols);
      const ComplexMatrix restricted = q.adjoint() * xh * q;
      const HermitianEigenSystem local = hermitian_eig(0.5 * (restricted + restricted.adjoint()), tol);
      const ComplexMatrix rotated = q * local.eigenvectors;
      for (std::size_t k = 0; k < group.size(); ++k) basis.push_back(rotated.column(k));
    }
  }

  for (auto& v : basis) fix_phase(v);
  // Inside a degenerate block the order must not depend on the seed.
  for (const auto& group : groups) {
    if (group.size() < 2 || group.back() >= basis.size()) continue;
    std::sort(basis.begin() + static_cast<std::ptrdiff_t>(group.front()),
              basis.begin() + static_cast<std::ptrdiff_t>(group.back() + 1),
              [](const ComplexVector& x, const ComplexVector& y) { return lexicographically_before(x, y, kOrderingEps); });
  }
  return basis;
}

Attempt construct(const PureState& state, std::span<const double> weights, double tol, RandomSeed seed) {
  const std::size_t n = state.parties();
  const ComplexMatrix a = matricize(state, Bipartition::single(0, n));
  const std::vector<ComplexVector> basis0 = party0_basis(state, a, weights, tol, seed);
  const std::size_t r = basis0.size();
  const std::vector<std::size_t> rest_dims(state.dims().begin() + 1, state.dims().end());

  std::vector<std::vector<ComplexVector>> bases(n, std::vector<ComplexVector>(r));
  for (std::size_t i = 0; i < r; ++i) {
    ComplexVector chi(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(basis0[i][k]) * a(k, c);
      chi[c] = s;
    }
    if (norm2(chi) <= tol * weights.front()) {
      ExistenceWitness w;
      w.kind = WitnessKind::ReconstructionFailure;
      w.split = Bipartition::single(0, n);
      w.weight_index = i;
      w.magnitude = norm2(chi);
      return w;
    }
    const PureState conditional = PureState::normalize(chi, rest_dims);
    const ProductTestResult pt = product_test(conditional, tol);
    if (pt.verdict == ProductVerdict::NotProduct) {
      ExistenceWitness w;
      const auto sv = svd(matricize(conditional, pt.witness->split), tol).weights;
      w.magnitude = sv.size() > 1 ? sv[1] / sv[0] : 0.0;
      w.kind = WitnessKind::EntangledConditionalVector;
      for (std::size_t p : pt.witness->split.left) w.split.left.push_back(p + 1);
      for (std::size_t p : pt.witness->split.right) w.split.right.push_back(p + 1);
      w.weight_index = i;
      w.rank = pt.witness->rank;
      return w;
    }
    bases[0][i] = basis0[i];
    for (std::size_t p = 1; p < n; ++p) bases[p][i] = pt.factors[p - 1];
  }

  // Gauge: every party but the last has its largest component real positive;
  // the last absorbs the phase that makes each coefficient real positive.
  std::vector<double> lambdas(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<ComplexVector> factors;
    for (std::size_t p = 0; p < n; ++p) {
      fix_phase(bases[p][i]);
      factors.push_back(bases[p][i]);
    }
    const Complex t = inner(kron(factors), state.amps());
    const Complex phase = t / std::abs(t);
    for (auto& z : bases[n - 1][i]) z *= phase;
    lambdas[i] = std::abs(t);
  }

  for (std::size_t p = 0; p < n; ++p) {
    double worst = 0.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        const double dev = std::abs(inner(bases[p][i], bases[p][j]) - (i == j ? 1.0 : 0.0));
        if (dev > worst) {
          worst = dev;
          worst_index = j;
        }
      }
    if (worst > tol) {
      ExistenceWitness w;
      w.kind = WitnessKind::NonOrthogonalFactors;
      w.split = Bipartition::single(p, n);
      w.weight_index = worst_index;
      w.magnitude = worst;
      return w;
    }
  }

  // Within a degenerate block the sorted coefficient values take the block's
  // slots in order, keeping the weights descending.
  Candidate out;
  out.weights.resize(r);
  for (const auto& group : group_degenerate(weights.first(r), tol)) {
    std::vector<double> values;
    for (std::size_t idx : group) values.push_back(lambdas[idx]);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t k = 0; k < group.size(); ++k) out.weights[group[k]] = values[k];
  }

  ComplexVector rebuilt(state.size());
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<ComplexVector> factors;
    for (std::size_t p = 0; p < n; ++p) factors.push_back(bases[p][i]);
    const ComplexVector term = kron(factors);
    for (std::size_t k = 0; k < term.size(); ++k) rebuilt[k] += out.weights[i] * term[k];
  }
  double residual = 0.0;
  for (std::size_t k = 0; k < rebuilt.size(); ++k) residual += std::norm(state.amps()[k] - rebuilt[k]);
  residual = std::sqrt(residual);
  if (!(residual <= tol)) {
    ExistenceWitness w;
    w.kind = WitnessKind::ReconstructionFailure;
    w.split = Bipartition::single(0, n);
    w.magnitude = residual;
    return w;
  }
  out.bases = std::move(bases);
  out.residual = residual;
  return out;
}

bool candidates_agree(const Candidate& x, const Candidate& y, double tol) {
  if (x.weights.size() != y.weights.size()) return false;
  for (std::size_t i = 0; i < x.weights.size(); ++i)
    if (std::abs(x.weights[i] - y.weights[i]) > tol) return false;
  for (std::size_t p = 0; p < x.bases.size(); ++p)
    for (std::size_t i = 0; i < x.weights.size(); ++i)
      if (std::abs(inner(x.bases[p][i], y.bases[p][i])) <= 1.0 - kBasisAgreement) return false;
  return true;
}

std::optional<ExistenceWitness> spectrum_mismatch(const PureState& state, std::span<const double> reference,
                                                  double tol) {
  const std::size_t n = state.parties();
  for (std::size_t p = 1; p < n; ++p) {
    const Bipartition split = Bipartition::single(p, n);
    const auto w = svd(matricize(state, split), tol).weights;
    const std::size_t common = std::min(w.size(), reference.size());
    for (std::size_t i = 0; i < common; ++i) {
      const double dev = std::abs(w[i] - reference[i]);
      if (dev > tol) return ExistenceWitness{WitnessKind::MarginalSpectrumMismatch, split, i, std::nullopt, dev};
    }
    if (w.size() != reference.size()) {
      const double missing = w.size() > common ? w[common] : reference[common];
      return ExistenceWitness{WitnessKind::MarginalSpectrumMismatch, split, common, std::nullopt, missing};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<RandomSeed> default_seeds() { return {RandomSeed{1}, RandomSeed{2}}; }

GeneralizedSchmidtResult generalized_schmidt_test(const PureState& state, double tol,
                                                  std::span<const RandomSeed> seeds) {
  if (state.parties() < 3)
    throw Error(ErrorKind::TooFewParties, "homogeneous form test needs at least three parties");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  GeneralizedSchmidtResult result;
  const std::vector<RandomSeed> fallback = default_seeds();
  if (seeds.empty()) seeds = fallback;
  result.seeds_used.assign(seeds.begin(), seeds.end());

  const std::vector<double> weights =
      svd(matricize(state, Bipartition::single(0, state.parties())), tol).weights;
  const auto mismatch = spectrum_mismatch(state, weights, tol);

  std::vector<Attempt> attempts;
  for (const RandomSeed& s : seeds) attempts.push_back(construct(state, weights, tol, s));

  const auto rank_witness = [&]() -> std::optional<ExistenceWitness> {
    for (const auto& at : attempts)
      if (const auto* w = std::get_if<ExistenceWitness>(&at); w && w->rank) return *w;
    return std::nullopt;
  };

  if (mismatch) {
    result.verdict = SchmidtVerdict::NotExists;
    result.witness = rank_witness().value_or(*mismatch);
    return result;
  }

  const auto successes = std::count_if(attempts.begin(), attempts.end(),
                                       [](const Attempt& at) { return std::holds_alternative<Candidate>(at); });
  if (successes == 0) {
    result.verdict = SchmidtVerdict::NotExists;
    result.witness = rank_witness().value_or(std::get<ExistenceWitness>(attempts.front()));
    return result;
  }
  if (static_cast<std::size_t>(successes) != attempts.size()) {
    result.verdict = SchmidtVerdict::Indeterminate;
    return result;
  }
  const Candidate& first = std::get<Candidate>(attempts.front());
  for (const auto& at : attempts) {
    if (!candidates_agree(first, std::get<Candidate>(at), tol)) {
      result.verdict = SchmidtVerdict::Indeterminate;
      return result;
    }
  }
  result.verdict = SchmidtVerdict::Exists;
  result.weights = first.weights;
  result.party_bases = first.bases;
  result.residual = first.residual;
  return result;
}

ProductTestResult product_test(const PureState& state, double tol) {
  ProductTestResult result;
  const std::size_t n = state.parties();
  std::vector<std::size_t> dims = state.dims();
  ComplexVector current(state.amps().begin(), state.amps().end());

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const PureState sub = PureState::normalize(current, dims);
    const CanonicalRepresentation rep = svd(matricize(sub, Bipartition::single(0, dims.size())), tol);
    if (rep.rank() > 1) {
      ProductWitness w;
      for (std::size_t p = 0; p <= k; ++p) w.split.left.push_back(p);
      for (std::size_t p = k + 1; p < n; ++p) w.split.right.push_back(p);
      w.rank = rep.rank();
      result.verdict = ProductVerdict::NotProduct;
      result.witness = w;
      result.factors.clear();
      return result;
    }
    result.factors.push_back(rep.left_vectors.column(0));
    ComplexVector next = rep.right_vectors.column(0);
    for (auto& z : next) z = std::conj(z);
    current = std::move(next);
    dims.erase(dims.begin());
  }
  {
    const PureState last = PureState::normalize(current, dims);
    result.factors.emplace_back(last.amps().begin(), last.amps().end());
  }

  for (std::size_t p = 0; p < n; ++p) fix_phase(result.factors[p]);
  const ComplexVector rebuilt = kron(result.factors);
  const Complex t = inner(rebuilt, state.amps());
  const Complex phase = t / std::abs(t);
  for (auto& z : result.factors.back()) z *= phase;
  double residual = 0.0;
  for (std::size_t k = 0; k < rebuilt.size(); ++k) residual += std::norm(state.amps()[k] - phase * rebuilt[k]);
  result.residual = std::sqrt(residual);
  result.verdict = ProductVerdict::IsProduct;
  return result;
}

double pure_vs_mixture_gap(std::span<const Complex> psi, const MixtureSpec& mix) {
  if (std::abs(norm2(psi) - 1.0) > 1e-10) throw Error(ErrorKind::NotNormalized, "psi must be a unit vector");
  if (mix.weights.empty() || mix.weights.size() != mix.components.size())
    throw Error(ErrorKind::InvalidMixture, "need one positive weight per component");
  double total = 0.0;
  for (double w : mix.weights) {
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidMixture, "mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::InvalidMixture, "mixture weights must sum to 1");
  for (const auto& c : mix.components)
    if (c.size() != psi.size()) throw Error(ErrorKind::DimensionMismatch, "component dimension differs from psi");
  for (std::size_t i = 0; i < mix.components.size(); ++i)
    for (std::size_t j = i; j < mix.components.size(); ++j)
      if (std::abs(inner(mix.components[i], mix.components[j]) - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw Error(ErrorKind::InvalidMixture, "mixture components must be orthonormal");

  double overlap = 0.0;
  for (std::size_t i = 0; i < mix.components.size(); ++i)
    overlap += mix.weights[i] * std::norm(inner(psi, mix.components[i]));
  return 1.0 - overlap;
}

CountingRecord counting_check(std::uint64_t dim, std::uint64_t parties) {
  if (dim < 1 || parties < 1) throw Error(ErrorKind::InvalidArgument, "dimension and party count must be >= 1");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (parties > kMax / dim) throw Error(ErrorKind::InvalidArgument, "unknown count overflows");
  CountingRecord rec;
  rec.unknowns = dim * parties;
  rec.equations = 1;
  for (std::uint64_t k = 0; k < parties; ++k) {
    if (rec.equations > kMax / dim) throw Error(ErrorKind::InvalidArgument, "equation count overflows");
    rec.equations *= dim;
  }
  rec.overdetermined = rec.equations > rec.unknowns;
  return rec;
}

CountingRecord counting_check(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one party");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  CountingRecord rec;
  rec.equations = 1;
  for (std::size_t d : dims) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimensions must be >= 1");
    rec.unknowns += d;
    if (rec.equations > kMax / d) throw Error(ErrorKind::InvalidArgument, "equation count overflows");
    rec.equations *= d;
  }
  rec.overdetermined = rec.equations > rec.unknowns;
  return rec;
}

}  // namespace schmidtkit
