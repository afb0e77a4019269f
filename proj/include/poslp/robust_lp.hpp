#pragma once

#include <string>
#include <vector>

#include "poslp/lpcore.hpp"
#include "poslp/poly.hpp"

namespace poslp {

/// A constraint that must hold for every delta in the box:
/// sum_alpha delta^alpha (a_alpha . x + c_alpha)  (sense)  0.
/// `form` has dimension num_vars + 1; the last entry holds c_alpha.
struct RobustRow {
  PolyVec form;
  StrictSense sense = StrictSense::kNegative;

  bool is_constant() const { return form.is_constant(); }
};

/// Semi-infinite LP: linear in the decision variables, polynomial in delta.
struct RobustLinearProgram {
  std::size_t num_vars = 0;
  Vec objective;
  std::vector<double> var_lower;
  std::vector<double> var_upper;
  std::vector<std::string> names;
  std::vector<RobustRow> rows;
  BoxDomain domain;
  StrictnessPolicy policy;

  /// Adds a free, zero-cost variable and returns its index.
  std::size_t add_var(std::string name, double lower = -kInf, double upper = kInf);
  /// `coeffs` has num_vars entries.
  void add_constant_row(const Vec& coeffs, double constant, StrictSense sense);
  void add_row(PolyVec form, StrictSense sense);

  unsigned degree() const;
  std::size_t num_robust_rows() const;
  /// Throws DimensionError on inconsistent sizes.
  void validate() const;
};

/// The strictified LP row of a delta-independent robust row.
LpRow constant_row(const RobustRow& row, std::size_t num_vars, const StrictnessPolicy& policy);

/// LP with the variables of `rlp` and no rows; the starting point of every
/// relaxation.
LinearProgram empty_program(const RobustLinearProgram& rlp);

/// Finite LP when no row depends on delta. Throws DegreeError otherwise.
LinearProgram to_linear_program(const RobustLinearProgram& rlp);

}  // namespace poslp
