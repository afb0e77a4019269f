// Dense two-phase primal simplex on a full tableau.
//
// The program is rewritten in standard form  min c^T y, A y = b, y >= 0  by
// shifting finite lower bounds, reflecting upper-bounded-only variables and
// splitting free variables. Each row is equilibrated to unit max-norm. After
// phase 2 the basic solution and the duals are recomputed from a fresh LU of
// the basis matrix.

#include <algorithm>
#include <cmath>
#include <optional>

#include "poslp/error.hpp"
#include "poslp/lpcore.hpp"

namespace poslp {

namespace {

struct VarMap {
  double offset = 0.0;
  double sign = 1.0;   // x = offset + sign * y[plus] - y[minus]
  long plus = -1;
  long minus = -1;
};

struct StdRow {
  std::vector<double> a;
  double b = 0.0;
  bool equality = false;
  long orig = -1;  // index into lp.rows, -1 for an upper-bound row
  double scale = 1.0;
  double flip = 1.0;
  long identity_col = -1;
};

enum class RunResult { kOptimal, kUnbounded };

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n)
      : m_(m), n_(n), t_(m * (n + 1), 0.0), d_(n + 1, 0.0), basis_(m, 0) {}

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }
  std::vector<double>& cost_row() { return d_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t w = n_ + 1;
    double* pr = &t_[r * w];
    const double inv = 1.0 / pr[c];
    nz_.clear();
    for (std::size_t j = 0; j < w; ++j) {
      if (pr[j] != 0.0) {
        pr[j] *= inv;
        nz_.push_back(j);
      }
    }
    pr[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = &t_[i * w];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0) {
      for (std::size_t j : nz_) d_[j] -= f * pr[j];
      d_[c] = 0.0;
    }
    basis_[r] = c;
  }

  void erase_row(std::size_t r) {
    const std::size_t w = n_ + 1;
    t_.erase(t_.begin() + static_cast<long>(r * w),
             t_.begin() + static_cast<long>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<long>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
};

class SimplexRunner {
 public:
  SimplexRunner(Tableau& tab, const SimplexOptions& opt, std::size_t degenerate_limit,
                std::size_t& iterations)
      : tab_(tab), opt_(opt), degenerate_limit_(degenerate_limit), iterations_(iterations) {}

  RunResult run(const std::vector<bool>& eligible) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    for (;;) {
      if (iterations_ >= opt_.max_iterations) {
        throw NonConvergenceError("simplex iteration cap reached");
      }
      const auto& d = tab_.cost_row();
      long enter = -1;
      double best = -opt_.optimality_tolerance;
      for (std::size_t j = 0; j < tab_.cols(); ++j) {
        if (!eligible[j] || d[j] >= -opt_.optimality_tolerance) continue;
        if (bland) {
          enter = static_cast<long>(j);
          break;
        }
        if (d[j] < best) {
          best = d[j];
          enter = static_cast<long>(j);
        }
      }
      if (enter < 0) return RunResult::kOptimal;
      const std::size_t c = static_cast<std::size_t>(enter);

      const std::optional<std::size_t> leave = bland ? ratio_bland(c) : ratio_harris(c);
      if (!leave) return RunResult::kUnbounded;
      const std::size_t r = *leave;
      const double step = std::max(tab_.rhs(r), 0.0) / tab_.at(r, c);
      tab_.pivot(r, c);
      ++iterations_;
      for (std::size_t i = 0; i < tab_.rows(); ++i) {
        if (tab_.rhs(i) < 0.0 && tab_.rhs(i) > -opt_.feasibility_tolerance) tab_.rhs(i) = 0.0;
      }
      if (step <= 1e-12) {
        if (++degenerate_run > degenerate_limit_) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

 private:
  std::optional<std::size_t> ratio_harris(std::size_t c) const {
    double theta_max = kInf;
    for (std::size_t i = 0; i < tab_.rows(); ++i) {
      const double a = tab_.at(i, c);
      if (a > opt_.pivot_tolerance) {
        theta_max = std::min(
            theta_max, (std::max(tab_.rhs(i), 0.0) + opt_.feasibility_tolerance) / a);
      }
    }
    if (theta_max == kInf) return std::nullopt;
    std::optional<std::size_t> pick;
    double best_a = 0.0;
    for (std::size_t i = 0; i < tab_.rows(); ++i) {
      const double a = tab_.at(i, c);
      if (a > opt_.pivot_tolerance && std::max(tab_.rhs(i), 0.0) / a <= theta_max &&
          a > best_a) {
        best_a = a;
        pick = i;
      }
    }
    return pick;
  }

  std::optional<std::size_t> ratio_bland(std::size_t c) const {
    double best = kInf;
    for (std::size_t i = 0; i < tab_.rows(); ++i) {
      const double a = tab_.at(i, c);
      if (a > opt_.pivot_tolerance) best = std::min(best, std::max(tab_.rhs(i), 0.0) / a);
    }
    if (best == kInf) return std::nullopt;
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < tab_.rows(); ++i) {
      const double a = tab_.at(i, c);
      if (a > opt_.pivot_tolerance && std::max(tab_.rhs(i), 0.0) / a <= best + 1e-12 &&
          (!pick || tab_.basis()[i] < tab_.basis()[*pick])) {
        pick = i;
      }
    }
    return pick;
  }

  Tableau& tab_;
  const SimplexOptions& opt_;
  std::size_t degenerate_limit_;
  std::size_t& iterations_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opt) {
  lp.validate();
  const std::size_t nv = lp.num_vars;

  // Variable substitution.
  std::vector<VarMap> vmap(nv);
  std::size_t ny = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.var_lower[j];
    const double up = lp.var_upper[j];
    VarMap& v = vmap[j];
    if (std::isfinite(lo)) {
      v.offset = lo;
      v.plus = static_cast<long>(ny++);
      if (std::isfinite(up)) upper_rows.emplace_back(static_cast<std::size_t>(v.plus), up - lo);
    } else if (std::isfinite(up)) {
      v.offset = up;
      v.sign = -1.0;
      v.plus = static_cast<long>(ny++);
    } else {
      v.plus = static_cast<long>(ny++);
      v.minus = static_cast<long>(ny++);
    }
  }

  double const_obj = 0.0;
  std::vector<double> cost_y(ny, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    const double c = lp.objective[j];
    const_obj += c * vmap[j].offset;
    cost_y[static_cast<std::size_t>(vmap[j].plus)] += c * vmap[j].sign;
    if (vmap[j].minus >= 0) cost_y[static_cast<std::size_t>(vmap[j].minus)] -= c;
  }

  LpSolution sol;
  sol.row_duals = Vec(lp.rows.size());

  // Rows in y-space.
  std::vector<StdRow> srows;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    const LpRow& row = lp.rows[k];
    StdRow s;
    s.a.assign(ny, 0.0);
    s.b = row.rhs;
    s.equality = row.relation == Relation::kEqual;
    s.orig = static_cast<long>(k);
    for (std::size_t j = 0; j < nv; ++j) {
      const double a = row.coeffs[j];
      if (a == 0.0) continue;
      s.b -= a * vmap[j].offset;
      s.a[static_cast<std::size_t>(vmap[j].plus)] += a * vmap[j].sign;
      if (vmap[j].minus >= 0) s.a[static_cast<std::size_t>(vmap[j].minus)] -= a;
    }
    double scale = 0.0;
    for (double a : s.a) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) {
      const double tol = opt.feasibility_tolerance * (1.0 + std::abs(row.rhs));
      const bool ok = s.equality ? std::abs(s.b) <= tol : s.b >= -tol;
      if (!ok) {
        sol.status = LpStatus::kInfeasible;
        sol.x = Vec(nv);
        sol.row_duals = Vec();
        return sol;
      }
      continue;
    }
    s.scale = scale;
    for (double& a : s.a) a /= scale;
    s.b /= scale;
    srows.push_back(std::move(s));
  }
  for (const auto& [col, ub] : upper_rows) {
    StdRow s;
    s.a.assign(ny, 0.0);
    s.a[col] = 1.0;
    s.b = ub;
    srows.push_back(std::move(s));
  }

  // Column layout: structural | slacks | artificials.
  const std::size_t m = srows.size();
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (StdRow& s : srows) {
    if (s.b < 0.0) {
      s.flip = -1.0;
      for (double& a : s.a) a = -a;
      s.b = -s.b;
    }
    if (!s.equality) ++n_slack;
    if (s.equality || s.flip < 0.0) ++n_art;
  }
  const std::size_t n = ny + n_slack + n_art;
  Tableau tab(m, n);
  std::vector<bool> is_art(n, false);
  {
    std::size_t next_slack = ny;
    std::size_t next_art = ny + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
      StdRow& s = srows[i];
      for (std::size_t j = 0; j < ny; ++j) tab.at(i, j) = s.a[j];
      tab.rhs(i) = s.b;
      long slack = -1;
      if (!s.equality) {
        slack = static_cast<long>(next_slack++);
        tab.at(i, static_cast<std::size_t>(slack)) = s.flip;
      }
      if (s.equality || s.flip < 0.0) {
        const std::size_t a = next_art++;
        is_art[a] = true;
        tab.at(i, a) = 1.0;
        s.identity_col = static_cast<long>(a);
      } else {
        s.identity_col = slack;
      }
      tab.basis()[i] = static_cast<std::size_t>(s.identity_col);
    }
  }
  // Original standard-form data for the final refinement.
  std::vector<double> a0;
  a0.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a0.push_back(tab.at(i, j));
  }
  std::vector<std::size_t> row_origin(m);
  for (std::size_t i = 0; i < m; ++i) row_origin[i] = i;

  const std::size_t degenerate_limit = 10 * std::max<std::size_t>(nv, 1);
  SimplexRunner runner(tab, opt, degenerate_limit, sol.iterations);

  double bmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) bmax = std::max(bmax, tab.rhs(i));

  // Phase 1.
  if (n_art > 0) {
    auto& d = tab.cost_row();
    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = is_art[j] ? 1.0 : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[tab.basis()[i]]) continue;
      for (std::size_t j = 0; j <= n; ++j) d[j] -= tab.at(i, j);
    }
    std::vector<bool> eligible(n, true);
    runner.run(eligible);
    const double infeas = -tab.cost_row()[n];
    if (infeas > opt.feasibility_tolerance * (1.0 + bmax) * 10.0) {
      sol.status = LpStatus::kInfeasible;
      sol.x = Vec(nv);
      sol.row_duals = Vec();
      return sol;
    }
    // Drive artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.rows();) {
      if (!is_art[tab.basis()[i]]) {
        ++i;
        continue;
      }
      long best = -1;
      double best_abs = 1e-7;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_art[j]) continue;
        if (std::abs(tab.at(i, j)) > best_abs) {
          best_abs = std::abs(tab.at(i, j));
          best = static_cast<long>(j);
        }
      }
      if (best >= 0) {
        tab.pivot(i, static_cast<std::size_t>(best));
        ++sol.iterations;
        ++i;
      } else {
        tab.erase_row(i);
        row_origin.erase(row_origin.begin() + static_cast<long>(i));
      }
    }
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.rhs(i) < 0.0) tab.rhs(i) = 0.0;
    }
  }

  // Phase 2.
  std::vector<double> cost(n, 0.0);
  std::copy(cost_y.begin(), cost_y.end(), cost.begin());
  {
    auto& d = tab.cost_row();
    for (std::size_t j = 0; j < n; ++j) d[j] = cost[j];
    d[n] = 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double cb = cost[tab.basis()[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) d[j] -= cb * tab.at(i, j);
    }
  }
  std::vector<bool> eligible(n);
  for (std::size_t j = 0; j < n; ++j) eligible[j] = !is_art[j];
  const RunResult result = runner.run(eligible);

  const std::size_t mr = tab.rows();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < mr; ++i) y[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);

  // Duals of the surviving standard rows from the identity columns.
  std::vector<double> pi(m, 0.0);
  for (std::size_t i = 0; i < mr; ++i) {
    const StdRow& s = srows[row_origin[i]];
    pi[row_origin[i]] = cost[static_cast<std::size_t>(s.identity_col)] -
                        tab.cost_row()[static_cast<std::size_t>(s.identity_col)];
  }

  // Refinement from a fresh factorization of the basis.
  if (result == RunResult::kOptimal && mr > 0) {
    Mat basis_mat(mr, mr);
    Vec rhs(mr);
    Vec cb(mr);
    for (std::size_t i = 0; i < mr; ++i) {
      const std::size_t oi = row_origin[i];
      rhs[i] = srows[oi].b;
      cb[i] = cost[tab.basis()[i]];
      for (std::size_t k = 0; k < mr; ++k) basis_mat(i, k) = a0[oi * n + tab.basis()[k]];
    }
    try {
      LuDecomposition lu(basis_mat);
      Vec yb = lu.solve(rhs);
      // One step of iterative refinement.
      Vec resid = rhs - basis_mat * yb;
      yb += lu.solve(resid);
      bool ok = true;
      for (std::size_t i = 0; i < mr; ++i) {
        if (yb[i] < -1e-9 * (1.0 + bmax)) ok = false;
      }
      if (ok) {
        for (std::size_t i = 0; i < mr; ++i) y[tab.basis()[i]] = std::max(yb[i], 0.0);
        Vec p = lu.solve_transposed(cb);
        for (std::size_t i = 0; i < mr; ++i) pi[row_origin[i]] = p[i];
      }
    } catch (const SingularityError&) {
      // Keep the tableau values.
    }
  }

  sol.x = Vec(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    const VarMap& v = vmap[j];
    double x = v.offset + v.sign * y[static_cast<std::size_t>(v.plus)];
    if (v.minus >= 0) x -= y[static_cast<std::size_t>(v.minus)];
    sol.x[j] = x;
  }
  sol.objective_value = lp.objective.dot(sol.x);
  (void)const_obj;

  if (result == RunResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    sol.row_duals = Vec();
    return sol;
  }
  // Phase 1 accepts a residual proportional to the rhs size, which can hide a
  // small genuine infeasibility. Certify the returned point row by row.
  for (const LpRow& row : lp.rows) {
    double scale = 0.0;
    double lhs = 0.0;
    double mag = std::abs(row.rhs);
    for (std::size_t j = 0; j < nv; ++j) {
      scale = std::max(scale, std::abs(row.coeffs[j]));
      lhs += row.coeffs[j] * sol.x[j];
      mag += std::abs(row.coeffs[j] * sol.x[j]);
    }
    if (scale == 0.0) continue;
    const double viol = row.relation == Relation::kEqual ? std::abs(lhs - row.rhs) : lhs - row.rhs;
    if (viol / scale > opt.feasibility_tolerance * (1.0 + mag / scale)) {
      sol.status = LpStatus::kInfeasible;
      sol.x = Vec(nv);
      sol.row_duals = Vec();
      return sol;
    }
  }
  sol.status = LpStatus::kOptimal;
  for (std::size_t i = 0; i < m; ++i) {
    const StdRow& s = srows[i];
    if (s.orig < 0) continue;
    sol.row_duals[static_cast<std::size_t>(s.orig)] = pi[i] * s.flip / s.scale;
  }
  return sol;
}

}  // namespace poslp
