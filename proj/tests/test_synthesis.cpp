#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "poslp/error.hpp"
#include "poslp/gains.hpp"
#include "poslp/synthesis.hpp"

using namespace poslp;

namespace {

PositiveLtiSystem scalar_unstable() {
  return PositiveLtiSystem(Mat{{1}}, Mat{{1}}, Mat{{1}}, Mat{{0}}, Mat{{1}}, Mat{{0}});
}

double closed_loop_linf(const PositiveLtiSystem& sys, const Mat& k) {
  const PositiveLtiSystem cl = closed_loop(sys, k);
  return oracle::max_row_sum(oracle::static_gain(cl.A(), cl.C(), cl.E(), cl.F()));
}

// Open loop with one negative coupling that the input can cancel.
PositiveLtiSystem sign_indefinite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat a = oracle::random_matrix(rng, 3, 3, 0.0, 1.0);
  a(0, 1) = -0.8;
  a(0, 0) = 0.5;
  a(2, 2) = 0.5;
  a(1, 1) = -(a(1, 0) + a(1, 2) + 0.5);  // row 1 has no actuator
  const Mat b{{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
  return PositiveLtiSystem(a, b, oracle::random_matrix(rng, 2, 3, 0.0, 1.0), Mat(2, 2),
                           oracle::random_matrix(rng, 3, 2, 0.0, 1.0), Mat(2, 2));
}

}  // namespace

TEST(Synthesis, ScalarStabilization) {
  const SynthesisResult r = stabilize_linf(scalar_unstable());
  ASSERT_EQ(r.K.rows(), 1u);
  EXPECT_LT(r.K(0, 0), -1.0);
  const double g = 1.0 / (-1.0 - r.K(0, 0));
  EXPECT_LE(g, r.gamma * (1 + 1e-6) + 1e-6);
}

TEST(Synthesis, ScalarBoundedGain) {
  const SynthesisResult r = stabilize_linf(scalar_unstable(), ControllerSpec::bounded(Mat{{-3}}, Mat{{0}}));
  EXPECT_NEAR(r.K(0, 0), -3.0, 1e-9);
  EXPECT_NEAR(r.gamma, 0.5, 1e-5);
  EXPECT_NEAR(closed_loop_linf(scalar_unstable(), r.K), 0.5, 1e-12);
}

TEST(Synthesis, BoundsTooTightAreInfeasible) {
  EXPECT_THROW(stabilize_linf(scalar_unstable(), ControllerSpec::bounded(Mat{{-0.5}}, Mat{{0}})),
               InfeasibleError);
}

TEST(Synthesis, ZeroControllerIsAdmissible) {
  const PositiveLtiSystem s = random_positive_system(4, 2, 2, 2, 17);
  const SynthesisResult r = stabilize_linf(s);
  EXPECT_LE(r.gamma, linf_gain(s).gamma + 1e-9);
}

TEST(Synthesis, AllEntriesZeroReducesToAnalysis) {
  const PositiveLtiSystem s = random_positive_system(3, 2, 2, 2, 5);
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < 3; ++j) all.emplace_back(r, j);
  }
  const SynthesisResult r = stabilize_linf(s, ControllerSpec::structured(all));
  EXPECT_EQ(r.K.max_abs(), 0.0);
  EXPECT_NEAR(r.gamma, linf_gain(s).gamma, 1e-9);
}

TEST(Synthesis, ClosedLoopCertification) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PositiveLtiSystem s = sign_indefinite(seed);
    ASSERT_FALSE(s.metzler_A());
    const SynthesisResult r = stabilize_linf(s);
    EXPECT_TRUE(closed_loop_positive(s, r.K));
    const PositiveLtiSystem cl = closed_loop(s, r.K);
    Mat a = cl.A();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (i != j) a(i, j) = std::max(a(i, j), 0.0);  // rounding at exact zeros
      }
    }
    EXPECT_TRUE(oracle::metzler_hurwitz(a));
    EXPECT_LE(closed_loop_linf(s, r.K), r.gamma * (1 + 1e-6) + 1e-6);
  }
}

TEST(Synthesis, StructuredZerosAreExact) {
  const PositiveLtiSystem s = sign_indefinite(3);
  const ControllerSpec spec = ControllerSpec::structured({{0, 2}, {1, 0}});
  const SynthesisResult r = stabilize_linf(s, spec);
  EXPECT_EQ(r.K(0, 2), 0.0);
  EXPECT_EQ(r.K(1, 0), 0.0);
}

TEST(Synthesis, ForcedNegativeEntryIsInfeasible) {
  // K(0, 1) = 0 leaves A(0, 1) + B(0) K(0, 1) = -0.05 whatever lambda is.
  const PositiveLtiSystem s(Mat{{-1, -0.05}, {0.2, -1}}, Mat{{1}, {0}}, Mat{{1, 1}}, Mat{{0}},
                            Mat{{1}, {1}}, Mat{{0}});
  EXPECT_THROW(stabilize_linf(s, ControllerSpec::structured({{0, 1}})), InfeasibleError);
  EXPECT_NO_THROW(stabilize_linf(s));
}

TEST(Synthesis, BoundsHold) {
  const PositiveLtiSystem s = sign_indefinite(4);
  const ControllerSpec spec = ControllerSpec::bounded(Mat{{-5, -5, -5}, {-5, -5, -5}}, Mat{{5, 5, 5}, {5, 5, 5}});
  const SynthesisResult r = stabilize_linf(s, spec);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_GE(r.K(i, j), -5 - 1e-9);
      EXPECT_LE(r.K(i, j), 5 + 1e-9);
    }
  }
}

TEST(Synthesis, RecoveryDividesByLambda) {
  const SynthesisResult r = stabilize_linf(sign_indefinite(1));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(r.K(i, j), r.mu_col[j][i] / r.lambda[j]);
  }
  EXPECT_EQ(mu_index(3, 1, 2, 0), 3u + 1u + 2u);
}

TEST(Synthesis, MissingInputIsModelError) {
  EXPECT_THROW(stabilize_linf(random_positive_system(3, 0, 1, 1, 1)), ModelError);
}

TEST(ControllerSpec, Validation) {
  EXPECT_THROW(ControllerSpec::structured({{2, 0}}).validate(1, 3), DimensionError);
  EXPECT_THROW(ControllerSpec::bounded(Mat{{1}}, Mat{{0}}).validate(1, 1), DomainError);
  EXPECT_THROW(ControllerSpec::bounded(Mat{{0, 0}}, Mat{{1}}).validate(1, 2), DimensionError);
}

TEST(ClosedLoop, Formula) {
  const PositiveLtiSystem s(Mat{{-1, 0}, {0, -2}}, Mat{{1}, {2}}, Mat{{1, 1}}, Mat{{3}}, Mat{{1}, {1}},
                            Mat{{0}});
  const Mat k{{0.5, -1}};
  const PositiveLtiSystem cl = closed_loop(s, k);
  EXPECT_EQ(cl.A(), (Mat{{-0.5, -1}, {1, -4}}));
  EXPECT_EQ(cl.C(), (Mat{{2.5, -2}}));
  EXPECT_FALSE(closed_loop_positive(s, k));
}
