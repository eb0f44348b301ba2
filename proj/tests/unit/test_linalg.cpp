#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "schmidtkit/error.hpp"
#include "schmidtkit/linalg.hpp"
#include "oracles.hpp"

using namespace schmidtkit;
using schmidtkit::testing::eigenvalues_oracle;
using schmidtkit::testing::random_hermitian;
using schmidtkit::testing::random_matrix;
using schmidtkit::testing::random_unitary;
using schmidtkit::testing::singular_values_oracle;

namespace {

double orthonormality_defect(const ComplexMatrix& cols) {
  return max_abs(cols.adjoint() * cols - ComplexMatrix::identity(cols.cols()));
}

}  // namespace

TEST(HermitianEig, Identity) {
  const auto sys = hermitian_eig(ComplexMatrix::identity(2));
  ASSERT_EQ(sys.eigenvalues.size(), 2u);
  EXPECT_EQ(sys.eigenvalues[0], 1.0);
  EXPECT_EQ(sys.eigenvalues[1], 1.0);
  EXPECT_LT(orthonormality_defect(sys.eigenvectors), 1e-15);
}

TEST(HermitianEig, DiagonalIsSortedDescending) {
  ComplexMatrix m(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 3.0;
  const auto sys = hermitian_eig(m);
  EXPECT_EQ(sys.eigenvalues, (std::vector<double>{3.0, -1.0}));
  EXPECT_NEAR(std::abs(sys.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(sys.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(HermitianEig, RandomFiveByFiveResidualAndTrace) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix m = random_hermitian(5, 100 + seed);
    const auto sys = hermitian_eig(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      const auto v = sys.eigenvectors.column(k);
      const auto mv = m * std::span<const Complex>(v);
      for (std::size_t i = 0; i < 5; ++i) EXPECT_LT(std::abs(mv[i] - sys.eigenvalues[k] * v[i]), 1e-10 * max_abs(m));
      sum += sys.eigenvalues[k];
      if (k > 0) EXPECT_GE(sys.eigenvalues[k - 1], sys.eigenvalues[k]);
    }
    EXPECT_NEAR(sum, trace(m).real(), 1e-10);
    EXPECT_LT(orthonormality_defect(sys.eigenvectors), 1e-12);

    const auto ref = eigenvalues_oracle(m);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(sys.eigenvalues[k], ref[k], 1e-10);
  }
}

TEST(HermitianEig, EigenvectorsArePhaseGauged) {
  const auto sys = hermitian_eig(random_hermitian(4, 7));
  for (std::size_t k = 0; k < 4; ++k) {
    const auto v = sys.eigenvectors.column(k);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    EXPECT_NEAR(v[arg].imag(), 0.0, 1e-15);
    EXPECT_GT(v[arg].real(), 0.0);
  }
}

TEST(HermitianEig, RejectsNonHermitianAndNonFinite) {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_eig(m);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
  ComplexMatrix bad = ComplexMatrix::identity(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    hermitian_eig(bad);
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
  }
}

TEST(Svd, ZeroMatrixHasEmptyRepresentation) {
  const auto rep = svd(ComplexMatrix(3, 2));
  EXPECT_TRUE(rep.weights.empty());
  EXPECT_EQ(rep.left_vectors.rows(), 3u);
  EXPECT_EQ(rep.right_vectors.rows(), 2u);
  EXPECT_EQ(numerical_rank(ComplexMatrix(3, 2)), 0u);
}

TEST(Svd, UnitRankOne) {
  const auto x = schmidtkit::testing::random_unit_vector(3, 1);
  const auto y = schmidtkit::testing::random_unit_vector(4, 2);
  const auto rep = svd(outer(x, y));
  ASSERT_EQ(rep.weights.size(), 1u);
  EXPECT_NEAR(rep.weights[0], 1.0, 1e-14);
}

TEST(Svd, WeightsSquaredMatchEigenvaluesOfGram) {
  const ComplexMatrix m = random_matrix(4, 6, 11);
  const auto rep = svd(m);
  const auto gram = hermitian_eig(m.adjoint() * m);
  ASSERT_EQ(rep.weights.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(rep.weights[k] * rep.weights[k], gram.eigenvalues[k], 1e-10);
  for (std::size_t k = 4; k < 6; ++k) EXPECT_NEAR(gram.eigenvalues[k], 0.0, 1e-10);
}

TEST(Svd, ReconstructionAndOrthonormalityOnRandomShapes) {
  std::uint64_t seed = 500;
  for (std::size_t rows = 1; rows <= 8; ++rows)
    for (std::size_t cols = 1; cols <= 8; ++cols) {
      const ComplexMatrix m = random_matrix(rows, cols, seed++);
      const auto rep = svd(m);
      EXPECT_LT(max_abs(rep.reconstruct() - m), 1e-10 * rep.weights.front());
      EXPECT_LT(orthonormality_defect(rep.left_vectors), 1e-12);
      EXPECT_LT(orthonormality_defect(rep.right_vectors), 1e-12);
      const auto ref = singular_values_oracle(m);
      for (std::size_t k = 0; k < rep.rank(); ++k) EXPECT_NEAR(rep.weights[k], ref[k], 1e-10);
    }
}

TEST(Svd, SingularValuesOfAdjointCoincide) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t rows = 1 + seed % 8, cols = 1 + (seed * 3) % 8;
    const ComplexMatrix m = random_matrix(rows, cols, 900 + seed);
    const auto a = svd(m).weights;
    const auto b = svd(m.adjoint()).weights;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-10);

    const auto left = hermitian_eig(m * m.adjoint()).eigenvalues;
    const auto right = hermitian_eig(m.adjoint() * m).eigenvalues;
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(left[k], right[k], 1e-10);
  }
}

TEST(Svd, RelativeThresholdIsScaleFree) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1e-200;
  m(1, 1) = 1e-212;
  EXPECT_EQ(numerical_rank(m), 1u);
  m(1, 1) = 1e-205;
  EXPECT_EQ(numerical_rank(m), 2u);
}

TEST(Polar, ScalarPhaseExtraction) {
  const ComplexMatrix m(1, 1, {Complex(0.0, 2.0)});
  const auto p = polar_decompose(m);
  EXPECT_NEAR(std::abs(p.isometry(0, 0) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.positive_part(0, 0) - 2.0), 0.0, 1e-15);
}

TEST(Polar, UnitaryIsItsOwnIsometry) {
  const ComplexMatrix u = random_unitary(4, 3);
  const auto p = polar_decompose(u);
  EXPECT_LT(max_abs(p.isometry - u), 1e-12);
  EXPECT_LT(max_abs(p.positive_part - ComplexMatrix::identity(4)), 1e-12);
}

TEST(Polar, IsometryProjectorOnWideMatrix) {
  const ComplexMatrix m = random_matrix(3, 5, 77);
  const auto p = polar_decompose(m);
  const ComplexMatrix proj = p.isometry.adjoint() * p.isometry;
  EXPECT_LT(max_abs(proj * proj - proj), 1e-10);
  EXPECT_LT(max_abs(proj - proj.adjoint()), 1e-10);
  EXPECT_NEAR(trace(proj).real(), 3.0, 1e-10);
  EXPECT_LT(max_abs(p.isometry * p.positive_part - m), 1e-10 * max_abs(m));
}

TEST(Polar, PositivePartIsSquareRootOfGram) {
  const ComplexMatrix m = random_matrix(5, 3, 78);
  const auto p = polar_decompose(m);
  EXPECT_LT(max_abs(p.positive_part * p.positive_part - m.adjoint() * m), 1e-10 * max_abs(m) * max_abs(m));
  for (double e : eigenvalues_oracle(p.positive_part)) EXPECT_GT(e, -1e-10);
}

TEST(Polar, RankDeficientOperatorAnnihilatesKernel) {
  // Rank two 4x4 operator: U must vanish on the kernel of |A|.
  const ComplexMatrix m = random_matrix(4, 2, 5) * random_matrix(2, 4, 6);
  const auto p = polar_decompose(m);
  EXPECT_LT(max_abs(p.isometry * p.positive_part - m), 1e-10 * max_abs(m));
  const ComplexMatrix proj = p.isometry.adjoint() * p.isometry;
  EXPECT_NEAR(trace(proj).real(), 2.0, 1e-10);
}

TEST(NumericalRank, Examples) {
  const auto x = schmidtkit::testing::random_unit_vector(4, 10);
  const auto y = schmidtkit::testing::random_unit_vector(3, 11);
  EXPECT_EQ(numerical_rank(3.5 * outer(x, y)), 1u);
  EXPECT_EQ(numerical_rank(ComplexMatrix(3, 3)), 0u);
  const ComplexMatrix singlet(2, 2, {0.0, 1.0, -1.0, 0.0});
  EXPECT_EQ(numerical_rank(singlet), 2u);
  const auto sv = svd(singlet).weights;
  EXPECT_NEAR(sv[0], 1.0, 1e-15);
  EXPECT_NEAR(sv[1], 1.0, 1e-15);
}

TEST(NumericalRank, InvariantUnderUnitaries) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const std::size_t r = 1 + t % n;
    const ComplexMatrix m = random_matrix(n, r, 3000 + t) * random_matrix(r, n, 4000 + t);
    const std::size_t base = numerical_rank(m);
    EXPECT_EQ(base, r);
    EXPECT_EQ(numerical_rank(random_unitary(n, 5000 + t) * m), base);
    EXPECT_EQ(numerical_rank(m * random_unitary(n, 6000 + t)), base);
  }
}

TEST(GroupDegenerate, AnchoredGroups) {
  const std::vector<double> w{0.9, 0.3 + 1e-12, 0.3, 0.1};
  const auto g = group_degenerate(w, 1e-8);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[1], (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(group_degenerate(std::vector<double>{}, 1e-8).empty());
}

TEST(PhaseGauge, TiesResolveToLowestIndex) {
  ComplexVector v{Complex(0.0, 1.0) / std::sqrt(2.0), Complex(1.0, 0.0) / std::sqrt(2.0)};
  fix_phase(v);
  EXPECT_NEAR(v[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v[0].imag(), 0.0, 1e-15);
  EXPECT_NEAR(v[1].imag(), -1.0 / std::sqrt(2.0), 1e-15);
}
