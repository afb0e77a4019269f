#include <gtest/gtest.h>

#include <random>

#include "poslp/error.hpp"
#include "poslp/ilc.hpp"
#include "poslp/lpcore.hpp"

using namespace poslp;

namespace {

PolyMatrix scalar_delta(std::size_t n0) {
  PolyMatrix d(1, Mat(n0, n0));
  d.add_term({1}, Mat::identity(n0));
  return d;
}

// A point of {equalities} inside [-1, 1]^n, picked by a random objective.
Vec feasible_point(const ScalingConstraintSet& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearProgram lp = LinearProgram::with_vars(s.num_vars());
  for (std::size_t j = 0; j < s.num_vars(); ++j) {
    lp.objective[j] = u(rng);
    lp.var_lower[j] = -1.0;
    lp.var_upper[j] = 1.0;
  }
  for (std::size_t j : s.nonnegative_vars) lp.var_lower[j] = 0.0;
  for (const Vec& e : s.equalities) {
    Vec a(s.num_vars());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = e[j];
    lp.add_row(a, Relation::kEqual, -e[s.num_vars()]);
  }
  const LpSolution sol = solve_lp(lp);
  EXPECT_EQ(sol.status, LpStatus::kOptimal);
  return sol.x;
}

// phi1(d) + Delta(d)^T phi2(d), channel by channel, from raw coefficients.
Vec ilc_value(const ScalingConstraintSet& s, const Vec& x, const PolyMatrix& delta, double d) {
  const std::vector<double> pt{d};
  const Mat dm = delta.eval(pt);
  Vec phi1(s.n0), phi2(s.n0);
  for (std::size_t c = 0; c < s.n0; ++c) {
    for (std::size_t k = 0; k < s.phi1_monomials.size(); ++k) {
      phi1[c] += x[s.phi1_index(c, k)] * monomial_value(s.phi1_monomials[k], pt);
    }
    for (std::size_t k = 0; k < s.phi2_monomials.size(); ++k) {
      phi2[c] += x[s.phi2_index(c, k)] * monomial_value(s.phi2_monomials[k], pt);
    }
  }
  return phi1 + left_multiply(phi2, dm);
}

}  // namespace

TEST(Ilc, ConstantDelaySingleChannel) {
  const ScalingConstraintSet s = instantiate(ConstantDelay{}, PolyMatrix::constant(0, Mat::identity(1)));
  ASSERT_EQ(s.num_vars(), 2u);
  ASSERT_EQ(s.equalities.size(), 1u);
  EXPECT_EQ(s.equalities[0], (Vec{1, 1, 0}));
  EXPECT_TRUE(s.nonnegative.empty());
}

TEST(Ilc, TimeVaryingDelayAtZeroDerivative) {
  const PolyMatrix d = PolyMatrix::constant(0, Mat::identity(2));
  const ScalingConstraintSet tv = instantiate(TimeVaryingDelay{0.0}, d);
  const ScalingConstraintSet cd = instantiate(ConstantDelay{}, d);
  ASSERT_EQ(tv.equalities.size(), cd.equalities.size());
  for (std::size_t i = 0; i < tv.equalities.size(); ++i) EXPECT_EQ(tv.equalities[i], cd.equalities[i]);
  EXPECT_EQ(tv.nonnegative_vars.size(), 2u);
}

TEST(Ilc, TimeVaryingDelayScalesPhi2) {
  const ScalingConstraintSet s = instantiate(TimeVaryingDelay{0.25}, PolyMatrix::constant(0, Mat::identity(1)));
  EXPECT_EQ(s.equalities[0], (Vec{0.75, 1, 0}));
  EXPECT_THROW(instantiate(TimeVaryingDelay{1.0}, PolyMatrix::constant(0, Mat::identity(1))), DomainError);
}

TEST(Ilc, StaticGainChannel) {
  const double alpha = 0.4, beta = 1.3;
  const ScalingConstraintSet s =
      instantiate(SaturatedStaticGain{Mat{{alpha + beta}}}, PolyMatrix::constant(0, Mat(1, 1)));
  ASSERT_EQ(s.equalities.size(), 1u);
  EXPECT_EQ(s.equalities[0], (Vec{1, alpha + beta, 0}));
}

TEST(Ilc, StaticGainSetDependsOnlyOnGain) {
  // Two channels with equal static gain but different dynamics share the set.
  const Mat g{{0.5, 1.0}, {0.0, 2.0}};
  const ScalingConstraintSet a = instantiate(SaturatedStaticGain{g}, PolyMatrix::constant(1, Mat(2, 2)));
  const ScalingConstraintSet b = instantiate(SaturatedStaticGain{g}, scalar_delta(2));
  ASSERT_EQ(a.equalities.size(), b.equalities.size());
  for (std::size_t i = 0; i < a.equalities.size(); ++i) EXPECT_EQ(a.equalities[i], b.equalities[i]);
}

TEST(Ilc, StaticGainValidation) {
  EXPECT_THROW(instantiate(SaturatedStaticGain{Mat{{-1}}}, PolyMatrix::constant(0, Mat(1, 1))), DomainError);
  EXPECT_THROW(instantiate(SaturatedStaticGain{Mat(2, 2)}, PolyMatrix::constant(0, Mat(1, 1))),
               DimensionError);
  EXPECT_THROW(instantiate(FreePolynomial{0, true}, scalar_delta(1)), DomainError);
  EXPECT_THROW(instantiate(FreeConstant{}, PolyMatrix(1, Mat(2, 3))), DimensionError);
}

TEST(Ilc, FreeConstantPolynomials) {
  const ScalingConstraintSet s = instantiate(FreeConstant{}, scalar_delta(2));
  EXPECT_EQ(s.num_vars(), 4u);
  ASSERT_EQ(s.nonnegative.size(), 2u);
  // Channel 0: phi1[0] + d * phi2[0].
  EXPECT_EQ(s.nonnegative[0].coefficient({0}), (Vec{1, 0, 0, 0, 0}));
  EXPECT_EQ(s.nonnegative[0].coefficient({1}), (Vec{0, 0, 1, 0, 0}));
}

TEST(Ilc, SaturatedPolynomialVanishesIdentically) {
  const PolyMatrix d = scalar_delta(3);
  for (unsigned deg : {1u, 2u, 3u}) {
    const ScalingConstraintSet s = instantiate(FreePolynomial{deg, true}, d);
    EXPECT_EQ(s.phi2_monomials.size() + 1, s.phi1_monomials.size());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Vec x = feasible_point(s, seed);
      for (int k = 0; k <= 100; ++k) {
        for (double v : ilc_value(s, x, d, k / 100.0)) EXPECT_NEAR(v, 0.0, 1e-12);
      }
    }
  }
}

TEST(Ilc, SaturationGivesLeadingCoefficientRelation) {
  // Degree one on a scalar channel: phi1 = phi1^0 + phi1^1 d, phi2 = phi2^0.
  const ScalingConstraintSet s = instantiate(FreePolynomial{1, true}, scalar_delta(1));
  const Vec x = feasible_point(s, 9);
  EXPECT_NEAR(x[s.phi1_index(0, 1)], -x[s.phi2_index(0, 0)], 1e-12);
  EXPECT_NEAR(x[s.phi1_index(0, 0)], 0.0, 1e-12);
}

TEST(Ilc, VariableNames) {
  const ScalingConstraintSet s = instantiate(FreePolynomial{1, false}, scalar_delta(1));
  EXPECT_EQ(s.var_name(0), "phi1[0](0)");
  EXPECT_EQ(s.var_name(3), "phi2[0](1)");
}

TEST(Ilc, Describe) {
  EXPECT_EQ(describe(FreeConstant{}), "constant scalings");
  EXPECT_EQ(describe(FreePolynomial{2, true}), "saturated polynomial scalings of degree 2");
  EXPECT_EQ(describe(ConstantDelay{}), "constant delay");
}
