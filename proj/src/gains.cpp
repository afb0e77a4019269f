#include "poslp/gains.hpp"

#include <string>

#include "poslp/error.hpp"

namespace poslp {

LinearProgram l1_gain_program(const Mat& a, const Mat& c, const Mat& e, const Mat& f,
                              const StrictnessPolicy& policy) {
  policy.validate();
  const std::size_t n = a.rows();
  const std::size_t g = n;
  LinearProgram lp = LinearProgram::with_vars(n + 1);
  lp.objective[g] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    lp.var_lower[i] = policy.lambda_floor;
    lp.names[i] = "lambda[" + std::to_string(i) + "]";
  }
  lp.var_lower[g] = 0.0;
  lp.names[g] = "gamma";

  const Vec csum = c.col_sums();
  for (std::size_t j = 0; j < n; ++j) {
    Vec row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = a(i, j);
    lp.rows.push_back(strictify(StrictRow{std::move(row), csum[j], StrictSense::kNegative}, policy));
  }
  const Vec fsum = f.col_sums();
  for (std::size_t j = 0; j < e.cols(); ++j) {
    Vec row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = e(i, j);
    row[g] = -1.0;
    lp.rows.push_back(strictify(StrictRow{std::move(row), fsum[j], StrictSense::kNegative}, policy));
  }
  return lp;
}

GainResult solve_gain_program(LinearProgram lp, std::size_t n) {
  GainResult r;
  r.solution = solve_lp(lp);
  if (r.solution.status != LpStatus::kOptimal) {
    throw StabilityError("gain LP is " + std::string(to_string(r.solution.status)) +
                         ": no copositive certificate, the system is not asymptotically stable");
  }
  r.gamma = r.solution.x[n];
  r.lambda = Vec(n);
  for (std::size_t i = 0; i < n; ++i) r.lambda[i] = r.solution.x[i];
  r.lp = std::move(lp);
  return r;
}

namespace {

void require_positive(const PositiveLtiSystem& sys) {
  if (!sys.is_positive()) {
    throw ClassificationError("gain analysis requires a positive system (see `check`)");
  }
}

}  // namespace

GainResult l1_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy) {
  require_positive(sys);
  return solve_gain_program(l1_gain_program(sys.A(), sys.C(), sys.E(), sys.F(), policy), sys.n());
}

GainResult linf_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy) {
  return l1_gain(transpose_system(sys), policy);
}

}  // namespace poslp
