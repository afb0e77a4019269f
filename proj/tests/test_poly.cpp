#include <gtest/gtest.h>

#include <random>

#include "poslp/error.hpp"
#include "poslp/models.hpp"
#include "poslp/poly.hpp"

using namespace poslp;

namespace {

PolyVec scalar(std::initializer_list<double> coeffs) {
  PolyVec p(1, Vec(1));
  unsigned k = 0;
  for (double c : coeffs) p.add_term({k++}, Vec{c});
  return p;
}

PolyVec random_poly(std::mt19937_64& rng, std::size_t params, unsigned degree, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolyVec p(params, Vec(dim));
  for (const Exponent& e : monomials_up_to(params, degree)) {
    Vec c(dim);
    for (double& v : c) v = u(rng);
    p.add_term(e, c);
  }
  return p;
}

double eval1(const PolyVec& p, std::vector<double> pt) { return p.eval(pt)[0]; }

}  // namespace

TEST(Poly, ConstantEvaluatesToCoefficient) {
  const PolyMatrix p = PolyMatrix::constant(2, Mat{{1, 2}});
  const std::vector<double> pt{0.3, 0.9};
  EXPECT_EQ(p.eval(pt), (Mat{{1, 2}}));
}

TEST(Poly, QuadraticExampleEndpoints) {
  const PolySystem s = quadratic_uncertain_example();
  const std::vector<double> zero{0.0}, one{1.0};
  EXPECT_EQ(s.A.eval(zero), (Mat{{-10, 2, 4}, {3, -8, 1}, {2, 1, -5}}));
  EXPECT_EQ(s.A.eval(one), s.A.coefficient({0}) + s.A.coefficient({1}) + s.A.coefficient({2}));
}

TEST(Poly, ArityMismatch) {
  const PolyVec p = scalar({1, 2});
  const std::vector<double> two{0.1, 0.2};
  EXPECT_THROW(p.eval(two), DimensionError);
  PolyVec q(2, Vec(1));
  EXPECT_THROW(q.add_term({1}, Vec{1}), DimensionError);
  EXPECT_THROW(q.add_term({1, 0}, Vec{1, 2}), DimensionError);
}

TEST(Poly, ZerosAreNotStored) {
  PolyVec p = scalar({1, 1});
  p.add_term({1}, Vec{-1});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.degree(), 0u);
}

TEST(Poly, MultiplyByOne) {
  std::mt19937_64 rng(1);
  const PolyVec p = random_poly(rng, 2, 3, 2);
  const PolyVec one = PolyVec::constant(2, Vec{1.0});
  EXPECT_EQ(poly_mul(p, one), p);
}

TEST(Poly, DifferenceOfSquares) {
  const PolyVec prod = poly_mul(scalar({1, 1}), scalar({1, -1}));
  EXPECT_EQ(prod, scalar({1, 0, -1}));
}

TEST(Poly, RowTimesAffineMatrix) {
  // phi2 = (a0 + a1 d), Delta = D0 + d D1; expand phi2^T Delta by hand.
  PolyVec phi(1, Vec(2));
  phi.add_term({0}, Vec{1, 2});
  phi.add_term({1}, Vec{3, -1});
  PolyMatrix delta(1, Mat(2, 2));
  delta.add_term({0}, Mat{{1, 0}, {0, 2}});
  delta.add_term({1}, Mat{{0, 1}, {1, 0}});
  const PolyVec r = poly_left_multiply(phi, delta);
  EXPECT_EQ(r.degree(), 2u);
  EXPECT_EQ(r.coefficient({0}), (Vec{1, 4}));
  EXPECT_EQ(r.coefficient({1}), (Vec{3 + 2, -2 + 1}));
  EXPECT_EQ(r.coefficient({2}), (Vec{-1, 3}));
}

TEST(Poly, RingAxiomsAtSamplePoints) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const PolyVec a = random_poly(rng, 2, 2, 1);
    const PolyVec b = random_poly(rng, 2, 1, 1);
    const PolyVec c = random_poly(rng, 2, 2, 1);
    const PolyVec lhs1 = poly_mul(poly_mul(a, b), c);
    const PolyVec rhs1 = poly_mul(a, poly_mul(b, c));
    const PolyVec lhs2 = poly_mul(a, b + c);
    const PolyVec rhs2 = poly_mul(a, b) + poly_mul(a, c);
    for (int k = 0; k < 10; ++k) {
      const std::vector<double> pt{u(rng), u(rng)};
      EXPECT_NEAR(lhs1.eval(pt)[0], rhs1.eval(pt)[0], 1e-12);
      EXPECT_NEAR(lhs2.eval(pt)[0], rhs2.eval(pt)[0], 1e-12);
      EXPECT_NEAR(lhs1.eval(pt)[0], a.eval(pt)[0] * b.eval(pt)[0] * c.eval(pt)[0], 1e-12);
    }
  }
}

TEST(Poly, MatrixProductAndTranspose) {
  std::mt19937_64 rng(6);
  PolyMatrix a(1, Mat(2, 3)), b(1, Mat(3, 2));
  std::uniform_real_distribution<double> u(-1, 1);
  for (unsigned k = 0; k < 3; ++k) {
    Mat ca(2, 3), cb(3, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        ca(i, j) = u(rng);
        cb(j, i) = u(rng);
      }
    }
    a.add_term({k}, ca);
    b.add_term({k}, cb);
  }
  const std::vector<double> pt{0.37};
  EXPECT_LE(max_abs_diff(poly_mul(a, b).eval(pt), a.eval(pt) * b.eval(pt)), 1e-13);
  EXPECT_EQ(poly_transpose(a).eval(pt), a.eval(pt).transpose());
}

TEST(Monomials, Order) {
  const std::vector<Exponent> m = monomials_up_to(2, 2);
  const std::vector<Exponent> expect = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(m, expect);
  EXPECT_EQ(monomials_of_degree(3, 2).size(), 6u);
  EXPECT_EQ(monomials_up_to(3, 3).size(), 20u);
}

TEST(CoefficientRows, ConstantIsZeroPadded) {
  const std::vector<Vec> rows = coefficient_rows(scalar({4}), 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], Vec{4});
  EXPECT_EQ(rows[1], Vec{0});
  EXPECT_EQ(rows[2], Vec{0});
}

TEST(CoefficientRows, DegreeExceeded) { EXPECT_THROW(coefficient_rows(scalar({1, 0, 1}), 1), DegreeError); }

TEST(CoefficientRows, TauCombinationGivesChiRows) {
  // tau1 g1 + ... + tau5 g2^2 on [-1, 1] with g1 = x + 1, g2 = 1 - x.
  const double tau[5] = {0.3, 1.1, -0.7, 2.0, 0.4};
  const PolyVec g1 = scalar({1, 1}), g2 = scalar({1, -1});
  const PolyVec sum = tau[0] * g1 + tau[1] * g2 + tau[2] * poly_mul(g1, g2) + tau[3] * poly_mul(g1, g1) +
                      tau[4] * poly_mul(g2, g2);
  const std::vector<Vec> rows = coefficient_rows(sum, 2);
  EXPECT_NEAR(rows[2][0], tau[3] + tau[4] - tau[2], 1e-14);
  EXPECT_NEAR(rows[1][0], tau[0] - tau[1] + 2 * tau[3] - 2 * tau[4], 1e-14);
  EXPECT_NEAR(rows[0][0], tau[0] + tau[1] + tau[2] + tau[3] + tau[4], 1e-14);
}

TEST(CoefficientRows, InterpolationOracle) {
  std::mt19937_64 rng(10);
  const PolyVec p = random_poly(rng, 1, 3, 1);
  const std::vector<Vec> rows = coefficient_rows(p, 3);
  for (double x : {-1.0, -0.3, 0.0, 0.5, 2.0}) {
    double horner = 0.0;
    for (std::size_t k = rows.size(); k-- > 0;) horner = horner * x + rows[k][0];
    EXPECT_NEAR(horner, eval1(p, {x}), 1e-13);
  }
}

TEST(CoefficientRows, RoundTrip) {
  std::mt19937_64 rng(12);
  const PolyVec p = random_poly(rng, 3, 2, 2);
  EXPECT_EQ(from_coefficient_rows(3, 2, coefficient_rows(p, 2)), p);
}

TEST(BoxDomain, Validation) {
  EXPECT_THROW((BoxDomain{{0.0}, {0.0}}.validate()), DomainError);
  EXPECT_NO_THROW(BoxDomain::unit(3).validate());
}
