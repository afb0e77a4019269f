#include "poslp/lpcore.hpp"

#include <algorithm>
#include <cmath>

#include "poslp/error.hpp"

namespace poslp {

LinearProgram LinearProgram::with_vars(std::size_t n) {
  LinearProgram lp;
  lp.num_vars = n;
  lp.objective = Vec(n);
  lp.var_lower.assign(n, -kInf);
  lp.var_upper.assign(n, kInf);
  lp.names.assign(n, std::string());
  return lp;
}

std::size_t LinearProgram::add_row(Vec coeffs, Relation relation, double rhs) {
  if (coeffs.size() != num_vars) throw DimensionError("LP row has the wrong length");
  rows.push_back(LpRow{std::move(coeffs), relation, rhs});
  return rows.size() - 1;
}

void LinearProgram::validate() const {
  if (objective.size() != num_vars) throw ValidationError("objective length mismatch");
  if (var_lower.size() != num_vars || var_upper.size() != num_vars) {
    throw ValidationError("bound vector length mismatch");
  }
  if (!names.empty() && names.size() != num_vars) {
    throw ValidationError("name list length mismatch");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw ValidationError("objective coefficient not finite");
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (std::isnan(var_lower[j]) || std::isnan(var_upper[j])) {
      throw ValidationError("NaN variable bound");
    }
    if (var_lower[j] > var_upper[j]) throw ValidationError("lower bound above upper bound");
    if (var_lower[j] == kInf || var_upper[j] == -kInf) {
      throw ValidationError("bound at the wrong infinity");
    }
  }
  for (const LpRow& r : rows) {
    if (r.coeffs.size() != num_vars) throw ValidationError("row length mismatch");
    if (!std::isfinite(r.rhs)) throw ValidationError("row rhs not finite");
    for (double a : r.coeffs) {
      if (!std::isfinite(a)) throw ValidationError("row coefficient not finite");
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

double primal_infeasibility(const LinearProgram& lp, const Vec& x) {
  double worst = 0.0;
  for (const LpRow& r : lp.rows) {
    double ax = 0.0;
    double mag = std::abs(r.rhs);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      ax += r.coeffs[j] * x[j];
      mag += std::abs(r.coeffs[j] * x[j]);
    }
    double viol = ax - r.rhs;
    if (r.relation == Relation::kEqual) viol = std::abs(viol);
    worst = std::max(worst, viol / (1.0 + mag));
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const double scale = 1.0 + std::abs(x[j]);
    if (std::isfinite(lp.var_lower[j])) {
      worst = std::max(worst, (lp.var_lower[j] - x[j]) / scale);
    }
    if (std::isfinite(lp.var_upper[j])) {
      worst = std::max(worst, (x[j] - lp.var_upper[j]) / scale);
    }
  }
  return worst;
}

OptimalityResiduals check_optimality(const LinearProgram& lp, const LpSolution& sol) {
  OptimalityResiduals res;
  res.primal_infeasibility = primal_infeasibility(lp, sol.x);
  if (sol.row_duals.size() != lp.rows.size()) {
    res.dual_infeasibility = kInf;
    res.duality_gap = kInf;
    return res;
  }
  Vec reduced = lp.objective;
  double dual_obj = 0.0;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    const LpRow& r = lp.rows[k];
    const double y = sol.row_duals[k];
    if (r.relation == Relation::kLessEqual && y > 0.0) {
      res.dual_infeasibility = std::max(res.dual_infeasibility, y);
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) reduced[j] -= r.coeffs[j] * y;
    dual_obj += y * r.rhs;
    if (r.relation == Relation::kLessEqual) {
      double slack = r.rhs;
      for (std::size_t j = 0; j < lp.num_vars; ++j) slack -= r.coeffs[j] * sol.x[j];
      res.complementarity = std::max(res.complementarity, std::abs(y * slack));
    }
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const double z = reduced[j];
    if (z > 0.0) {
      if (std::isfinite(lp.var_lower[j])) {
        dual_obj += z * lp.var_lower[j];
        res.complementarity =
            std::max(res.complementarity, std::abs(z * (sol.x[j] - lp.var_lower[j])));
      } else {
        res.dual_infeasibility = std::max(res.dual_infeasibility, z);
      }
    } else if (z < 0.0) {
      if (std::isfinite(lp.var_upper[j])) {
        dual_obj += z * lp.var_upper[j];
        res.complementarity =
            std::max(res.complementarity, std::abs(z * (lp.var_upper[j] - sol.x[j])));
      } else {
        res.dual_infeasibility = std::max(res.dual_infeasibility, -z);
      }
    }
  }
  res.duality_gap = std::abs(lp.objective.dot(sol.x) - dual_obj);
  return res;
}

void StrictnessPolicy::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("strictness epsilon must be positive");
  }
  if (!(lambda_floor > 0.0) || !std::isfinite(lambda_floor)) {
    throw DomainError("lambda floor must be positive");
  }
}

LpRow strictify(const StrictRow& row, const StrictnessPolicy& policy) {
  switch (row.sense) {
    case StrictSense::kNegative:
      return LpRow{row.coeffs, Relation::kLessEqual, -policy.epsilon - row.constant};
    case StrictSense::kNonPositive:
      return LpRow{row.coeffs, Relation::kLessEqual, 0.0 - row.constant};
    case StrictSense::kZero:
      return LpRow{row.coeffs, Relation::kEqual, 0.0 - row.constant};
    case StrictSense::kPositive:
      return LpRow{-1.0 * row.coeffs, Relation::kLessEqual,
                   row.constant - policy.lambda_floor};
  }
  throw ValidationError("unknown strict sense");
}

std::vector<LpRow> strictify(std::span<const StrictRow> rows,
                             const StrictnessPolicy& policy) {
  std::vector<LpRow> out;
  out.reserve(rows.size());
  for (const StrictRow& r : rows) out.push_back(strictify(r, policy));
  return out;
}

}  // namespace poslp
