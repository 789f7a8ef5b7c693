#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "midpoint/error.hpp"
#include "midpoint/space.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace midpoint {
namespace {

using testing::error_code_of;

TEST(Norm, PythagoreanTriple) { EXPECT_DOUBLE_EQ(norm(Vector{3.0, 4.0}), 5.0); }

TEST(Norm, ZeroVectorAnyExponent) {
  for (double p : {1.5, 2.0, 3.0, 4.0, NormSpec::infinity}) {
    EXPECT_EQ(norm(Vector{0.0, 0.0}, NormSpec{p}), 0.0) << "p=" << p;
  }
}

TEST(Norm, SqrtTwo) { EXPECT_NEAR(norm(Vector{1.0, -1.0}), std::sqrt(2.0), 1e-15); }

TEST(Norm, MaxNormAndLargeMagnitudes) {
  EXPECT_EQ(norm(Vector{1.0, -7.0, 3.0}, NormSpec{NormSpec::infinity}), 7.0);
  // p-th powers would overflow without scaling.
  EXPECT_NEAR(norm(Vector{1e200, 1e200}, NormSpec{4.0}) / 1e200, std::pow(2.0, 0.25), 1e-14);
}

TEST(Norm, RejectsNonFiniteAndBadExponent) {
  EXPECT_EQ(error_code_of([] { norm(Vector{1.0, NAN}); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([] { norm(Vector{1.0, INFINITY}); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([] { norm(Vector{1.0}, NormSpec{1.0}); }), ErrorCode::unsupported_norm);
  EXPECT_EQ(error_code_of([] { norm(Vector{1.0}, NormSpec{0.5}); }), ErrorCode::unsupported_norm);
}

TEST(Vector, RejectsEmptyAndMismatchedArithmetic) {
  EXPECT_EQ(error_code_of([] { Vector v(std::vector<double>{}); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([] { Vector{1.0} + Vector{1.0, 2.0}; }), ErrorCode::invalid_input);
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(Vector{1.0, -1.0}, Vector{-1.0, 1.0}), -2.0);
  EXPECT_EQ(inner(Vector{1.0, -1.0}, Vector{0.0, 0.0}), 0.0);
  EXPECT_EQ(inner(Vector{0.5, -0.5}, Vector{-1.0, 1.0}), -1.0);
}

TEST(Inner, DimensionMismatch) {
  EXPECT_EQ(error_code_of([] { inner(Vector{1.0}, Vector{1.0, 2.0}); }), ErrorCode::invalid_input);
}

TEST(DualityMap, IdentityInHilbertCase) {
  EXPECT_EQ(duality_map(Vector{1.0, -1.0}), (Vector{1.0, -1.0}));
}

TEST(DualityMap, ZeroMapsToZero) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    EXPECT_EQ(duality_map(Vector{0.0, 0.0}, NormSpec{p}), (Vector{0.0, 0.0}));
  }
}

TEST(DualityMap, OnesInL4) {
  // Oracle: |x|_4^{2-4} |x_i|^3 with |x|_4 = 2^{1/4}, computed term by term.
  const double n4 = std::pow(1.0 + 1.0, 0.25);
  const double expected = std::pow(n4, -2.0) * 1.0;
  ASSERT_NEAR(expected, 0.70710678118654752, 1e-15);

  const Vector x{1.0, 1.0};
  const Vector j = duality_map(x, NormSpec{4.0});
  EXPECT_NEAR(j[0], expected, 1e-15);
  EXPECT_NEAR(j[1], expected, 1e-15);
  EXPECT_NEAR(inner(x, j), n4 * n4, 1e-12);
  EXPECT_NEAR(norm(j, NormSpec{4.0 / 3.0}), n4, 1e-12);
}

TEST(DualityMap, ZeroCoordinatesBelowTwo) {
  const Vector j = duality_map(Vector{0.0, -1.5}, NormSpec{1.5});
  EXPECT_EQ(j[0], 0.0);
  EXPECT_NEAR(j[1], -1.5, 1e-15);  // one nonzero coordinate: J(x) = x
}

TEST(DualityMap, UnsupportedNorms) {
  EXPECT_EQ(error_code_of([] { duality_map(Vector{1.0}, NormSpec{1.0}); }), ErrorCode::unsupported_norm);
  EXPECT_EQ(error_code_of([] { duality_map(Vector{1.0}, NormSpec{NormSpec::infinity}); }),
            ErrorCode::unsupported_norm);
}

TEST(DualityMapProperty, PairingAndDualNormIdentities) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> scale_exp(-3.0, 3.0);
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const NormSpec spec{p};
    for (int trial = 0; trial < 250; ++trial) {
      Vector x = testing::random_vector(rng, static_cast<std::size_t>(dim(rng)));
      x *= std::pow(10.0, scale_exp(rng));
      const double nx = norm(x, spec);
      const Vector j = duality_map(x, spec);
      EXPECT_LE(std::abs(inner(x, j) - nx * nx), 1e-10 * (1.0 + nx * nx));
      EXPECT_LE(std::abs(norm(j, NormSpec{spec.dual_exponent()}) - nx), 1e-10 * (1.0 + nx));
    }
  }
}

TEST(NormProperty, HomogeneityAndTriangleInequality) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (double p : {1.5, 2.0, 3.0, 4.0, NormSpec::infinity}) {
    const NormSpec spec{p};
    for (int trial = 0; trial < 200; ++trial) {
      const Vector x = testing::random_vector(rng, 4);
      const Vector y = testing::random_vector(rng, 4);
      const double s = t(rng);
      EXPECT_NEAR(norm(s * x, spec), std::abs(s) * norm(x, spec), 1e-12 * std::abs(s) * norm(x, spec));
      EXPECT_LE(norm(x + y, spec), norm(x, spec) + norm(y, spec) + 1e-12);
    }
  }
}

}  // namespace
}  // namespace midpoint
