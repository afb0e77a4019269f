#include "poslp/synthesis.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "poslp/error.hpp"

namespace poslp {

ControllerSpec ControllerSpec::structured(std::vector<std::pair<std::size_t, std::size_t>> zeros) {
  ControllerSpec s;
  s.zero_pattern = std::move(zeros);
  return s;
}

ControllerSpec ControllerSpec::bounded(Mat lower, Mat upper) {
  ControllerSpec s;
  s.k_lower = std::move(lower);
  s.k_upper = std::move(upper);
  return s;
}

void ControllerSpec::validate(std::size_t m, std::size_t n) const {
  for (const auto& [r, c] : zero_pattern) {
    if (r >= m || c >= n) throw DimensionError("zero-pattern entry outside the m x n gain");
  }
  if (!has_bounds()) return;
  if (k_lower.rows() != m || k_lower.cols() != n || k_upper.rows() != m || k_upper.cols() != n) {
    throw DimensionError("gain bounds must both be m x n");
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (k_lower(r, c) > k_upper(r, c)) throw DomainError("K_lower exceeds K_upper");
    }
  }
}

LinearProgram synthesis_program(const PositiveLtiSystem& sys, const ControllerSpec& spec,
                                const StrictnessPolicy& policy) {
  policy.validate();
  if (!sys.has_input()) throw ModelError("synthesis needs the input matrices B and D");
  const std::size_t n = sys.n();
  const std::size_t m = sys.m();
  const std::size_t q = sys.q();
  spec.validate(m, n);
  const Mat& a = sys.A();
  const Mat& b = sys.B();
  const Mat& c = sys.C();
  const Mat& d = sys.D();
  const std::size_t nv = n + 1 + n * m;
  const std::size_t g = n;

  LinearProgram lp = LinearProgram::with_vars(nv);
  lp.objective[g] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    lp.var_lower[i] = policy.lambda_floor;
    lp.names[i] = "lambda[" + std::to_string(i) + "]";
  }
  lp.var_lower[g] = 0.0;
  lp.names[g] = "gamma";
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < m; ++r) {
      lp.names[mu_index(n, m, j, r)] = "mu[" + std::to_string(j) + "][" + std::to_string(r) + "]";
    }
  }

  auto add = [&](Vec coeffs, double constant, StrictSense sense) {
    lp.rows.push_back(strictify(StrictRow{std::move(coeffs), constant, sense}, policy));
  };

  // A lambda + B sum(mu) + E 1 < 0
  const Vec esum = sys.E().row_sums();
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(nv);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = a(i, j);
      for (std::size_t r = 0; r < m; ++r) row[mu_index(n, m, j, r)] = b(i, r);
    }
    add(std::move(row), esum[i], StrictSense::kNegative);
  }
  // C lambda + D sum(mu) - gamma 1 + F 1 < 0
  const Vec fsum = sys.F().row_sums();
  for (std::size_t i = 0; i < q; ++i) {
    Vec row(nv);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c(i, j);
      for (std::size_t r = 0; r < m; ++r) row[mu_index(n, m, j, r)] = d(i, r);
    }
    row[g] = -1.0;
    add(std::move(row), fsum[i], StrictSense::kNegative);
  }
  // Off-diagonal entries of A + BK, scaled by lambda_j, are >= 0.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Vec row(nv);
      row[j] = 0.0 - a(i, j);
      for (std::size_t r = 0; r < m; ++r) row[mu_index(n, m, j, r)] = 0.0 - b(i, r);
      add(std::move(row), 0.0, StrictSense::kNonPositive);
    }
  }
  // Entries of C + DK, scaled by lambda_j, are >= 0.
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec row(nv);
      row[j] = 0.0 - c(i, j);
      for (std::size_t r = 0; r < m; ++r) row[mu_index(n, m, j, r)] = 0.0 - d(i, r);
      add(std::move(row), 0.0, StrictSense::kNonPositive);
    }
  }
  for (const auto& [r, j] : spec.zero_pattern) {
    Vec row(nv);
    row[mu_index(n, m, j, r)] = 1.0;
    add(std::move(row), 0.0, StrictSense::kZero);
  }
  if (spec.has_bounds()) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < m; ++r) {
        Vec lo(nv);
        lo[j] = spec.k_lower(r, j);
        lo[mu_index(n, m, j, r)] = -1.0;
        add(std::move(lo), 0.0, StrictSense::kNonPositive);
        Vec up(nv);
        up[j] = 0.0 - spec.k_upper(r, j);
        up[mu_index(n, m, j, r)] = 1.0;
        add(std::move(up), 0.0, StrictSense::kNonPositive);
      }
    }
  }
  return lp;
}

namespace {

// Entries of column j of A + BK (off-diagonal) and C + DK, with the size of
// the terms that produced them.
struct ColumnEntry {
  double value;
  double mag;
};

std::vector<ColumnEntry> column_entries(const PositiveLtiSystem& sys, const Mat& k, std::size_t j) {
  std::vector<ColumnEntry> out;
  auto add = [&](const Mat& x, const Mat& y, std::size_t i) {
    ColumnEntry e{x(i, j), std::abs(x(i, j))};
    for (std::size_t r = 0; r < k.rows(); ++r) {
      e.value += y(i, r) * k(r, j);
      e.mag += std::abs(y(i, r) * k(r, j));
    }
    out.push_back(e);
  };
  for (std::size_t i = 0; i < sys.n(); ++i) {
    if (i != j) add(sys.A(), sys.B(), i);
  }
  for (std::size_t i = 0; i < sys.q(); ++i) add(sys.C(), sys.D(), i);
  return out;
}

// K_j = mu_j / lambda_j amplifies LP residuals by 1 / lambda_j. Find the
// smallest correction K_j + s+ - s- (1-norm) that meets the sign constraints
// of column j in K units. The change in mu is far below the strictness margin.
void repair_column(const PositiveLtiSystem& sys, const ControllerSpec& spec, SynthesisResult& res,
                   std::size_t j) {
  const std::size_t m = sys.m();
  const std::vector<ColumnEntry> entries = column_entries(sys, res.K, j);
  bool violated = false;
  for (const ColumnEntry& e : entries) violated = violated || e.value < -1e-12 * (1.0 + e.mag);
  if (!violated) return;

  LinearProgram lp = LinearProgram::with_vars(2 * m);
  for (std::size_t v = 0; v < 2 * m; ++v) {
    lp.var_lower[v] = 0.0;
    lp.objective[v] = 1.0;
  }
  for (const auto& [r, c] : spec.zero_pattern) {
    if (c != j) continue;
    lp.var_upper[r] = 0.0;
    lp.var_upper[m + r] = 0.0;
  }
  auto delta_row = [&](const std::vector<double>& y, double rhs) {
    Vec row(2 * m);
    for (std::size_t r = 0; r < m; ++r) {
      row[r] = y[r];
      row[m + r] = 0.0 - y[r];
    }
    lp.add_row(std::move(row), Relation::kLessEqual, rhs);
  };
  // -(y_i . delta) <= current entry value
  std::size_t e = 0;
  auto sign_rows = [&](const Mat& y, std::size_t i) {
    std::vector<double> coeffs(m);
    for (std::size_t r = 0; r < m; ++r) coeffs[r] = 0.0 - y(i, r);
    delta_row(coeffs, entries[e++].value);
  };
  for (std::size_t i = 0; i < sys.n(); ++i) {
    if (i != j) sign_rows(sys.B(), i);
  }
  for (std::size_t i = 0; i < sys.q(); ++i) sign_rows(sys.D(), i);
  if (spec.has_bounds()) {
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<double> unit(m, 0.0);
      unit[r] = 1.0;
      delta_row(unit, spec.k_upper(r, j) - res.K(r, j));
      unit[r] = -1.0;
      delta_row(unit, res.K(r, j) - spec.k_lower(r, j));
    }
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) return;
  for (std::size_t r = 0; r < m; ++r) {
    res.K(r, j) += sol.x[r] - sol.x[m + r];
    res.mu_col[j][r] = res.K(r, j) * res.lambda[j];
  }
}

}  // namespace

SynthesisResult recover_controller(const Vec& x, std::size_t n, std::size_t m) {
  SynthesisResult res;
  res.gamma = x[n];
  res.lambda = Vec(n);
  res.K = Mat(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    res.lambda[j] = x[j];
    Vec mu(m);
    for (std::size_t r = 0; r < m; ++r) {
      mu[r] = x[mu_index(n, m, j, r)];
      res.K(r, j) = mu[r] / x[j];
    }
    res.mu_col.push_back(std::move(mu));
  }
  return res;
}

SynthesisResult stabilize_linf(const PositiveLtiSystem& sys, const ControllerSpec& spec,
                               const StrictnessPolicy& policy) {
  if (!is_nonnegative(sys.E()) || !is_nonnegative(sys.F())) {
    throw ClassificationError("synthesis requires nonnegative E and F");
  }
  LinearProgram lp = synthesis_program(sys, spec, policy);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InfeasibleError("no controller in the requested set makes the closed loop positive and stable");
  }
  SynthesisResult res = recover_controller(sol.x, sys.n(), sys.m());
  for (std::size_t j = 0; j < sys.n(); ++j) {
    repair_column(sys, spec, res, j);
  }
  res.lp = std::move(lp);
  res.solution = std::move(sol);
  return res;
}

PositiveLtiSystem closed_loop(const PositiveLtiSystem& sys, const Mat& k) {
  return PositiveLtiSystem(sys.A() + sys.B() * k, sys.B(), sys.C() + sys.D() * k, sys.D(),
                           sys.E(), sys.F());
}

bool closed_loop_positive(const PositiveLtiSystem& sys, const Mat& k, double rel_tol) {
  auto check = [&](const Mat& x, const Mat& y, bool skip_diag) {
    const Mat sum = x + y * k;
    for (std::size_t i = 0; i < sum.rows(); ++i) {
      for (std::size_t j = 0; j < sum.cols(); ++j) {
        if (skip_diag && i == j) continue;
        double mag = std::abs(x(i, j));
        for (std::size_t r = 0; r < k.rows(); ++r) mag += std::abs(y(i, r) * k(r, j));
        if (sum(i, j) < -rel_tol * (1.0 + mag)) return false;
      }
    }
    return true;
  };
  return check(sys.A(), sys.B(), true) && check(sys.C(), sys.D(), false);
}

}  // namespace poslp
