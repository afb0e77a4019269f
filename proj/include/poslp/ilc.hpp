#pragma once

#include <string>
#include <variant>
#include <vector>

#include "poslp/poly.hpp"

namespace poslp {

/// Constant phi1, phi2 with phi1 + Delta(delta)^T phi2 >= 0 on the whole box.
struct FreeConstant {};

/// phi1, phi2 polynomial of the given degree. When saturated, phi2 has one
/// degree less and phi1 + Delta^T phi2 vanishes identically.
struct FreePolynomial {
  unsigned degree = 2;
  bool saturate = false;
};

/// Operator with known static gain delta0 >= 0: phi1 + delta0^T phi2 = 0.
struct SaturatedStaticGain {
  Mat delta0;
};

/// Delay h(t) with h' <= mu_delay < 1: phi1 = phi >= 0, phi2 = -(1 - mu_delay) phi.
struct TimeVaryingDelay {
  double mu_delay = 0.0;
};

/// Constant delay, static gain one: phi1 + phi2 = 0.
struct ConstantDelay {};

using ScalingTemplate =
    std::variant<FreeConstant, FreePolynomial, SaturatedStaticGain, TimeVaryingDelay, ConstantDelay>;

std::string describe(const ScalingTemplate& t);

/// Coefficient variables of phi1(delta), phi2(delta) in R^{n0} and the
/// constraints tying them together. Variables are numbered locally:
/// phi1 coefficients first (channel-major), then phi2.
struct ScalingConstraintSet {
  std::size_t n0 = 0;
  std::size_t num_params = 0;
  std::vector<Exponent> phi1_monomials;
  std::vector<Exponent> phi2_monomials;
  /// Affine forms (length num_vars() + 1, last entry constant) equal to zero.
  std::vector<Vec> equalities;
  /// Polynomials with affine-form coefficients (dim num_vars() + 1) that must
  /// be nonnegative on the box.
  std::vector<PolyVec> nonnegative;
  /// Variables with a >= 0 bound.
  std::vector<std::size_t> nonnegative_vars;

  std::size_t num_vars() const { return n0 * (phi1_monomials.size() + phi2_monomials.size()); }
  std::size_t phi1_index(std::size_t channel, std::size_t k) const {
    return channel * phi1_monomials.size() + k;
  }
  std::size_t phi2_index(std::size_t channel, std::size_t k) const {
    return n0 * phi1_monomials.size() + channel * phi2_monomials.size() + k;
  }
  std::string var_name(std::size_t local) const;
};

/// Throws DimensionError when the template does not fit the n0 x n0 channel
/// block `delta`, DomainError for mu_delay >= 1, negative delta0 or a
/// saturated polynomial of degree zero.
ScalingConstraintSet instantiate(const ScalingTemplate& t, const PolyMatrix& delta);

}  // namespace poslp
