#include <gtest/gtest.h>

#include <cmath>

#include "schmidtkit/error.hpp"
#include "schmidtkit/state.hpp"
#include "oracles.hpp"

using namespace schmidtkit;
using schmidtkit::testing::digits_of;
using schmidtkit::testing::random_unitary;
using schmidtkit::testing::sub_index;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no schmidtkit::Error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Normalize, Singlet) {
  const std::vector<Complex> amps{0.0, 1.0, -1.0, 0.0};
  const PureState s = normalize(amps, {2, 2});
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(std::abs(s.amps()[1] - h), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(s.amps()[2] + h), 0.0, 1e-16);
  EXPECT_EQ(s.amps()[0], Complex{});
}

TEST(Normalize, AlreadyUnitIsUnchanged) {
  const std::vector<Complex> amps{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const PureState s = normalize(amps, {2, 3});
  EXPECT_EQ(std::vector<Complex>(s.amps().begin(), s.amps().end()), amps);
}

TEST(Normalize, ThreeFourFive) {
  const std::vector<Complex> amps{Complex(0.0, 3.0), 4.0};
  const PureState s = normalize(amps, {2});
  EXPECT_NEAR(std::abs(s.amps()[0] - Complex(0.0, 0.6)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(s.amps()[1] - 0.8), 0.0, 1e-16);
}

TEST(Normalize, TinyAndHugeScales) {
  const std::vector<Complex> tiny{1e-290, 1e-290};
  EXPECT_NEAR(normalize(tiny, {2}).amps()[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  const std::vector<Complex> huge{1e300, 1e300};
  EXPECT_NEAR(normalize(huge, {2}).amps()[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Normalize, Errors) {
  const std::vector<Complex> zero(4, 0.0);
  EXPECT_EQ(kind_of([&] { normalize(zero, {2, 2}); }), ErrorKind::ZeroVector);
  const std::vector<Complex> three(3, 1.0);
  EXPECT_EQ(kind_of([&] { normalize(three, {2, 2}); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { normalize(three, {3, 0}); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { normalize(three, {}); }), ErrorKind::ShapeMismatch);
  const std::vector<Complex> nan{std::nan(""), 1.0};
  EXPECT_EQ(kind_of([&] { normalize(nan, {2}); }), ErrorKind::NonFinite);
}

TEST(Matricize, ProductBasisState) {
  const std::vector<Complex> amps{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const ComplexMatrix m = matricize(normalize(amps, {2, 3}), {{0}, {1}});
  ASSERT_EQ(m.rows(), 2u);
  ASSERT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(0, 0), Complex(1.0));
  EXPECT_DOUBLE_EQ(frobenius_norm(m), 1.0);
}

TEST(Matricize, Singlet) {
  const ComplexMatrix m = matricize(singlet_state(), {{0}, {1}});
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(std::abs(m(0, 1) - h), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(m(1, 0) + h), 0.0, 1e-16);
  EXPECT_EQ(m(0, 0), Complex{});
  EXPECT_EQ(m(1, 1), Complex{});
}

TEST(Matricize, GhzTwoVersusOne) {
  const ComplexMatrix m = matricize(ghz_state(3), {{0, 1}, {2}});
  ASSERT_EQ(m.rows(), 4u);
  ASSERT_EQ(m.cols(), 2u);
  const double h = std::sqrt(0.5);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const bool hit = (r == 0 && c == 0) || (r == 3 && c == 1);
      EXPECT_NEAR(std::abs(m(r, c) - (hit ? h : 0.0)), 0.0, 1e-16) << r << "," << c;
    }
}

TEST(Matricize, MatchesEnumerationForEverySplit) {
  const std::vector<std::size_t> dims{2, 3, 2, 2};
  const PureState s = random_state(dims, {42});
  const std::vector<Bipartition> splits{
      {{0}, {1, 2, 3}}, {{3, 1}, {0, 2}}, {{2, 0, 3}, {1}}, {{1, 3}, {2, 0}}};
  for (const auto& split : splits) {
    const ComplexMatrix m = matricize(s, split);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
      const auto d = digits_of(flat, dims);
      EXPECT_EQ(m(sub_index(d, dims, split.left), sub_index(d, dims, split.right)), s.amps()[flat]);
    }
  }
}

TEST(Matricize, InvalidBipartitions) {
  const PureState s = random_state({2, 2, 2}, {1});
  EXPECT_EQ(kind_of([&] { matricize(s, {{0}, {1}}); }), ErrorKind::InvalidBipartition);
  EXPECT_EQ(kind_of([&] { matricize(s, {{0, 1, 2}, {}}); }), ErrorKind::InvalidBipartition);
  EXPECT_EQ(kind_of([&] { matricize(s, {{0, 0}, {1, 2}}); }), ErrorKind::InvalidBipartition);
  EXPECT_EQ(kind_of([&] { matricize(s, {{3}, {0, 1}}); }), ErrorKind::InvalidBipartition);
}

TEST(LocalUnitary, IdentityAndSwap) {
  const PureState s = random_state({3, 2}, {5});
  const PureState same = apply_local_unitary(s, 0, ComplexMatrix::identity(3));
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(std::abs(same.amps()[k] - s.amps()[k]), 0.0, 1e-15);

  const std::vector<Complex> e00{1.0, 0.0, 0.0, 0.0};
  const ComplexMatrix swap(2, 2, {0.0, 1.0, 1.0, 0.0});
  const PureState flipped = apply_local_unitary(normalize(e00, {2, 2}), 0, swap);
  EXPECT_EQ(flipped.amps()[2], Complex(1.0));
  EXPECT_EQ(flipped.amps()[0], Complex{});
}

TEST(LocalUnitary, MatchesDirectContraction) {
  const std::vector<std::size_t> dims{2, 3, 2};
  for (std::uint64_t t = 0; t < 10; ++t) {
    const PureState s = random_state(dims, {t});
    const ComplexMatrix u = random_unitary(3, 70 + t);
    const PureState out = apply_local_unitary(s, 1, u);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
      auto d = digits_of(flat, dims);
      Complex expect = 0.0;
      const std::size_t row = d[1];
      for (std::size_t k = 0; k < 3; ++k) {
        d[1] = k;
        expect += u(row, k) * s.amps()[schmidtkit::testing::flat_of(d, dims)];
      }
      EXPECT_NEAR(std::abs(out.amps()[flat] - expect), 0.0, 1e-14);
    }
    EXPECT_NEAR(norm2(out.amps()), 1.0, 1e-12);
  }
}

TEST(LocalUnitary, Errors) {
  const PureState s = random_state({2, 2}, {1});
  EXPECT_EQ(kind_of([&] { apply_local_unitary(s, 0, ComplexMatrix::identity(3)); }), ErrorKind::DimensionMismatch);
  const ComplexMatrix notu(2, 2, {1.0, 1.0, 0.0, 1.0});
  EXPECT_EQ(kind_of([&] { apply_local_unitary(s, 0, notu); }), ErrorKind::NotUnitary);
}

TEST(RandomState, ScalarAndDeterminism) {
  const PureState one = random_state({1}, {9});
  EXPECT_NEAR(std::abs(one.amps()[0]), 1.0, 1e-15);
  const PureState a = random_state({2, 3, 2}, {1234});
  const PureState b = random_state({2, 3, 2}, {1234});
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.amps()[k], b.amps()[k]);
  const PureState c = random_state({2, 3, 2}, {1235});
  EXPECT_NE(a.amps()[0], c.amps()[0]);
}

// Each |amp|^2 of a Haar state in dimension d is Beta(1, d-1) with variance
// (d-1) / (d^2 (d+1)). For d = 8 and 1000 draws one standard error is 2.8% of
// 1/8, so a flat 5% band per slot is under 2 sigma; slots are held to 4 sigma
// and the slot average of the relative deviations to 5%.
TEST(RandomState, MeanProbabilityIsUniform) {
  constexpr double d = 8.0;
  constexpr int draws = 1000;
  std::vector<double> mean(8, 0.0);
  for (std::uint64_t seed = 0; seed < draws; ++seed) {
    const PureState s = random_state({2, 2, 2}, {seed});
    for (std::size_t k = 0; k < 8; ++k) mean[k] += std::norm(s.amps()[k]) / draws;
  }
  const double se = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / draws);
  double avg_rel = 0.0;
  for (double m : mean) {
    EXPECT_NEAR(m, 1.0 / d, 4.0 * se);
    avg_rel += std::abs(m * d - 1.0) / d;
  }
  EXPECT_LT(avg_rel, 0.05);
}

TEST(CorrelatedState, Construction) {
  const std::vector<Complex> one{1.0};
  const PureState p = make_correlated_state(one, {3, 2, 2});
  EXPECT_EQ(p.amps()[0], Complex(1.0));

  const std::vector<Complex> c{0.6, 0.8};
  const PureState s = make_correlated_state(c, 2, 3);
  for (std::size_t k = 0; k < 8; ++k) {
    const double expect = k == 0 ? 0.6 : (k == 7 ? 0.8 : 0.0);
    EXPECT_NEAR(std::abs(s.amps()[k] - expect), 0.0, 1e-15);
  }
}

TEST(CorrelatedState, SingleVersusRestSpectraEqualCoefficients) {
  const std::vector<Complex> c{Complex(0.5, 0.1), Complex(0.0, -0.7), 0.0};
  std::vector<Complex> coeffs = c;
  double s = 0.0;
  for (auto z : c) s += std::norm(z);
  coeffs[2] = std::sqrt(1.0 - s);
  const PureState st = make_correlated_state(coeffs, {4, 3, 5});
  std::vector<double> expected{std::abs(coeffs[0]), std::abs(coeffs[1]), std::abs(coeffs[2])};
  std::sort(expected.begin(), expected.end(), std::greater<>());
  for (std::size_t p = 0; p < 3; ++p) {
    const auto sv = schmidtkit::testing::singular_values_oracle(matricize(st, Bipartition::single(p, 3)));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(sv[k], expected[k], 1e-12);
  }
}

TEST(CorrelatedState, Errors) {
  const std::vector<Complex> c{0.6, 0.8, 0.0};
  EXPECT_EQ(kind_of([&] { make_correlated_state(c, 2, 3); }), ErrorKind::CoeffsExceedDimension);
  const std::vector<Complex> bad{0.6, 0.7};
  EXPECT_EQ(kind_of([&] { make_correlated_state(bad, 2, 3); }), ErrorKind::NotNormalized);
}

TEST(Fixtures, WState) {
  const PureState w = w_state(3);
  const double t = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(w.amps()[1].real(), t, 1e-15);
  EXPECT_NEAR(w.amps()[2].real(), t, 1e-15);
  EXPECT_NEAR(w.amps()[4].real(), t, 1e-15);
  EXPECT_EQ(w.amps()[0], Complex{});
}

// Property: singular values along any split are invariant under a local
// unitary on any one party.
TEST(Properties, SpectrumInvariantUnderLocalUnitary) {
  const std::vector<std::size_t> dims{2, 3, 2};
  for (std::uint64_t t = 0; t < 20; ++t) {
    const PureState s = random_state(dims, {100 + t});
    const std::size_t party = t % 3;
    const PureState moved = apply_local_unitary(s, party, random_unitary(dims[party], 200 + t));
    for (const Bipartition& split : {Bipartition{{0}, {1, 2}}, Bipartition{{1}, {0, 2}}, Bipartition{{2}, {0, 1}}}) {
      const auto a = schmidtkit::testing::singular_values_oracle(matricize(s, split));
      const auto b = schmidtkit::testing::singular_values_oracle(matricize(moved, split));
      for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-10);
    }
  }
}
