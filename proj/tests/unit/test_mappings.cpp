#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "midpoint/mappings.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace midpoint {
namespace {

using testing::error_code_of;

TEST(FlipMap, Examples) {
  const Mapping T = make_flip_map();
  EXPECT_EQ(T.apply(Vector{1.0, -1.0}), (Vector{1.0, -1.0}));
  EXPECT_EQ(T.apply(Vector{1.0, 1.0}), (Vector{-1.0, -1.0}));
  EXPECT_EQ(T.apply(Vector{0.0, 1.0 / 3.0}), (Vector{0.0, -1.0 / 3.0}));
  EXPECT_EQ(T.apply(Vector{0.0, 0.0}), (Vector{0.0, 0.0}));
}

TEST(FlipMap, PowerExamples) {
  const Mapping T = make_flip_map();
  EXPECT_EQ(T.apply_power(2, Vector{1.0, 1.0}), (Vector{1.0, 1.0}));
  EXPECT_EQ(T.apply_power(3, Vector{1.0, 1.0}), (Vector{-1.0, -1.0}));
  EXPECT_EQ(T.apply_power(5, Vector{0.5, 1.0}), (Vector{-0.5, -1.0}));
  EXPECT_EQ(T.apply_power(5, Vector{-2.0, 1.0}), (Vector{-2.0, 1.0}));
}

TEST(FlipMap, RejectsWrongDimension) {
  const Mapping T = make_flip_map();
  EXPECT_EQ(error_code_of([&] { T.apply(Vector{1.0, 2.0, 3.0}); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([&] { T.apply_power(0, Vector{1.0, 2.0}); }), ErrorCode::invalid_input);
}

TEST(FlipMap, FixedPointMembershipOnDyadicGrid) {
  const Mapping T = make_flip_map();
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) {
      const Vector u{i / 4.0, j / 4.0};
      const bool expected_fixed = (i * j < 0) || (i == 0 && j == 0);
      EXPECT_EQ(T.apply(u) == u, expected_fixed) << i << "," << j;
    }
  }
}

TEST(FlipMap, IsometryWithinOneBranch) {
  const Mapping T = make_flip_map();
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 500) {
    const Vector u = testing::random_vector(rng, 2);
    const Vector v = testing::random_vector(rng, 2);
    if (in_flip_fixed_region(u) != in_flip_fixed_region(v)) continue;
    for (long n = 1; n <= 6; ++n) {
      EXPECT_LE(distance(T.apply_power(n, u), T.apply_power(n, v)),
                distance(u, v) * (1.0 + 1e-12));
    }
    ++checked;
  }
}

TEST(FlipMap, CrossBranchPairsAreExpanded) {
  // Points on either side of the u2 = 0 axis land on opposite branches.
  const Mapping T = make_flip_map();
  const Vector u{1.0, 0.01};
  const Vector v{1.0, -0.01};
  const double ratio = distance(T.apply(u), T.apply(v)) / distance(u, v);
  EXPECT_NEAR(ratio, std::hypot(2.0, 0.0) / 0.02, 1e-9);
  EXPECT_GT(ratio, T.envelope(1));
}

TEST(PowerConsistency, ClosedFormMatchesIteratedApply) {
  std::mt19937_64 rng(17);
  const Mapping flip = make_flip_map();
  Matrix A(2, 2);
  A << 0.6, -0.3, 0.2, 0.7;
  const Mapping aff = make_affine(A, Vector{0.25, -0.5});
  for (int trial = 0; trial < 100; ++trial) {
    const Vector u = testing::random_vector(rng, 2);
    for (long n = 1; n <= 10; ++n) {
      EXPECT_EQ(flip.apply_power(n, u), testing::compose(flip, n, u));
      const Vector closed = aff.apply_power(n, u);
      const Vector iterated = testing::compose(aff, n, u);
      EXPECT_LE(distance(closed, iterated), 1e-12 * (1.0 + norm(iterated)));
    }
  }
}

TEST(PowerConsistency, CompositionCapWithoutClosedForm) {
  const Mapping halve("halve", 1, [](const Vector& u) { return 0.5 * u; }, envelopes::unit());
  EXPECT_FALSE(halve.has_closed_form_power());
  EXPECT_EQ(halve.apply_power(3, Vector{8.0}), (Vector{1.0}));
  EXPECT_EQ(error_code_of([&] { halve.power(11, 10); }), ErrorCode::power_cap_exceeded);
}

TEST(Affine, ExamplesAndValidation) {
  const Mapping id = make_affine(Matrix::Identity(2, 2), Vector{0.0, 0.0});
  EXPECT_EQ(id.apply(Vector{3.0, -4.0}), (Vector{3.0, -4.0}));
  const Mapping half = make_affine(0.5 * Matrix::Identity(2, 2), Vector{0.0, 0.0});
  EXPECT_EQ(half.apply(Vector{2.0, 2.0}), (Vector{1.0, 1.0}));
  EXPECT_EQ(error_code_of([] { make_affine(Matrix::Identity(2, 2), Vector{1.0}); }),
            ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([] { make_affine(Matrix::Identity(2, 3), Vector{1.0, 2.0}); }),
            ErrorCode::invalid_input);
}

TEST(Affine, DefaultEnvelopeUsesSpectralNorm) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 3.0;
  A(1, 1) = 0.5;
  const Mapping T = make_affine(A, Vector{0.0, 0.0});
  EXPECT_NEAR(T.envelope(1), 3.0, 1e-12);
  EXPECT_NEAR(T.envelope(4), 81.0, 1e-9);
  const Mapping contractive = make_affine(0.5 * Matrix::Identity(2, 2), Vector{1.0, 1.0});
  EXPECT_EQ(contractive.envelope(7), 1.0);
}

TEST(SpectralNorm, AgreesWithSvd) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = static_cast<std::size_t>(1 + trial % 5);
    const Matrix A = to_matrix(testing::random_dense(rng, d));
    EXPECT_NEAR(spectral_norm_estimate(A), testing::spectral_norm_svd(A), 1e-6);
  }
  EXPECT_EQ(spectral_norm_estimate(Matrix::Zero(3, 3)), 0.0);
}

TEST(SpectralNorm, StartVectorInKernel) {
  // The default start is orthogonal to the row of this rank-one matrix.
  Matrix A(1, 2);
  A << 1.6180339887, -1.0;
  EXPECT_NEAR(spectral_norm_estimate(A), testing::spectral_norm_svd(A), 1e-9);
}

TEST(Contraction, HalfAndScaling) {
  const Contraction f = make_contraction_half();
  EXPECT_EQ(f(Vector{1.0, -1.0}), (Vector{0.5, -0.5}));
  EXPECT_EQ(f.alpha, 0.5);
  EXPECT_EQ(error_code_of([] { make_scaling_contraction(1.0); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([] { make_scaling_contraction(-0.1); }), ErrorCode::invalid_input);
}

TEST(VerifyEnvelope, DetectsExpansion) {
  const Mapping doubling = make_affine(2.0 * Matrix::Identity(2, 2), Vector{0.0, 0.0})
                               .with_envelope(envelopes::unit());
  const EnvelopeReport r = verify_envelope(doubling, 3, 200, 5);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.excess_by_n[0], 1.0, 1e-12);
  EXPECT_NEAR(r.excess_by_n[2], 7.0, 1e-12);
  EXPECT_EQ(r.worst_n, 3);
  ASSERT_TRUE(r.worst_u && r.worst_v);
}

TEST(VerifyEnvelope, RotationPasses) {
  const double t = 0.3;
  Matrix R(2, 2);
  R << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const EnvelopeReport r = verify_envelope(make_affine(R, Vector{1.0, 0.0}), 20, 500, 9);
  EXPECT_TRUE(r.passed) << r.max_excess;
  EXPECT_EQ(r.pairs_checked + r.pairs_skipped, 500u);
}

TEST(VerifyEnvelope, FlipOnBoxFailsOnLinesPasses) {
  for (const Envelope& env : {envelopes::geometric(), envelopes::unit()}) {
    const Mapping T = make_flip_map().with_envelope(env);
    EXPECT_FALSE(verify_envelope(T, 20, 1000, 42).passed);
    for (const Vector& dir : {Vector{1.0, 1.0}, Vector{1.0, -1.0}, Vector{0.0, 1.0}}) {
      const EnvelopeReport r = verify_envelope(T, 20, 1000, 42, SampleDomain{2.0, dir});
      EXPECT_TRUE(r.passed) << dir[0] << "," << dir[1] << " excess " << r.max_excess;
    }
  }
}

TEST(VerifyEnvelope, SeedDeterminism) {
  const Mapping T = make_flip_map();
  const EnvelopeReport a = verify_envelope(T, 5, 300, 1234);
  const EnvelopeReport b = verify_envelope(T, 5, 300, 1234);
  EXPECT_EQ(a.excess_by_n, b.excess_by_n);
  EXPECT_EQ(a.worst_u, b.worst_u);
}

TEST(VerifyEnvelope, RejectsBadArguments) {
  const Mapping T = make_flip_map();
  EXPECT_EQ(error_code_of([&] { verify_envelope(T, 0, 10, 1); }), ErrorCode::invalid_input);
  EXPECT_EQ(error_code_of([&] { verify_envelope(T, 1, 10, 1, SampleDomain{2.0, Vector{1.0}}); }),
            ErrorCode::invalid_input);
}

}  // namespace
}  // namespace midpoint
