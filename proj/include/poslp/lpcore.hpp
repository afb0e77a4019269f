#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "poslp/numlin.hpp"

namespace poslp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual };

struct LpRow {
  Vec coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

/// min objective^T x  s.t.  rows,  var_lower <= x <= var_upper.
/// Infinite bounds mean "absent".
struct LinearProgram {
  std::size_t num_vars = 0;
  Vec objective;
  std::vector<LpRow> rows;
  std::vector<double> var_lower;
  std::vector<double> var_upper;
  std::vector<std::string> names;

  /// Creates a program with `n` free, zero-cost, unnamed variables.
  static LinearProgram with_vars(std::size_t n);

  std::size_t add_row(Vec coeffs, Relation relation, double rhs);

  /// Throws ValidationError on inconsistent sizes, NaNs or lower > upper.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vec x;
  double objective_value = 0.0;
  std::size_t iterations = 0;
  /// Lagrange multipliers of `rows` (<= rows carry nonpositive duals);
  /// empty unless status is optimal.
  Vec row_duals;
};

struct SimplexOptions {
  std::size_t max_iterations = 1'000'000;
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
};

/// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after 10 * num_vars consecutive degenerate pivots.
/// Throws ValidationError for malformed programs and NonConvergenceError when
/// the iteration cap is reached.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

/// Residuals of a candidate primal/dual pair; all are zero at an exact optimum.
struct OptimalityResiduals {
  double primal_infeasibility = 0.0;  // relative, worst row or bound
  double dual_infeasibility = 0.0;    // wrong-signed duals / reduced costs
  double complementarity = 0.0;       // max |y_k (b_k - a_k x)|
  double duality_gap = 0.0;           // |c^T x - dual objective|
};

OptimalityResiduals check_optimality(const LinearProgram& lp, const LpSolution& sol);

/// Worst relative row/bound violation of x.
double primal_infeasibility(const LinearProgram& lp, const Vec& x);

// --- strictness ------------------------------------------------------------

/// Closed-form realization of strict inequalities.
struct StrictnessPolicy {
  double epsilon = 1e-7;
  double lambda_floor = 1e-6;

  /// Throws DomainError unless both values are strictly positive and finite.
  void validate() const;
};

enum class StrictSense {
  kNegative,     // coeffs.x + constant <  0
  kNonPositive,  // coeffs.x + constant <= 0
  kZero,         // coeffs.x + constant =  0
  kPositive,     // coeffs.x + constant >  0
};

struct StrictRow {
  Vec coeffs;
  double constant = 0.0;
  StrictSense sense = StrictSense::kNegative;
};

/// "expr < 0" becomes "expr <= -epsilon"; "expr > 0" becomes
/// "expr >= lambda_floor". Non-strict rows pass through.
LpRow strictify(const StrictRow& row, const StrictnessPolicy& policy);
std::vector<LpRow> strictify(std::span<const StrictRow> rows,
                             const StrictnessPolicy& policy);

// --- interchange -----------------------------------------------------------

/// Line-oriented text form: a header, the objective row, bounds, then one
/// constraint per line. Numbers use round-trip precision.
std::string format_lp(const LinearProgram& lp);
void write_lp(const LinearProgram& lp, const std::string& path);
LinearProgram parse_lp(const std::string& text);

/// FNV-1a hash of format_lp(lp); equal programs hash equal.
std::uint64_t lp_fingerprint(const LinearProgram& lp);

}  // namespace poslp
