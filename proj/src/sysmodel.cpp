#include "poslp/sysmodel.hpp"

#include <random>

#include "poslp/error.hpp"

namespace poslp {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

void collect_negative(const Mat& m, const char* name, bool skip_diagonal, double tol,
                      std::vector<SignViolation>& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (skip_diagonal && i == j) continue;
      if (m(i, j) < -tol) out.push_back(SignViolation{name, i, j, m(i, j)});
    }
  }
}

}  // namespace

PositiveLtiSystem::PositiveLtiSystem(Mat a, Mat b, Mat c, Mat d, Mat e, Mat f)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)),
      e_(std::move(e)),
      f_(std::move(f)) {
  require(a_.is_square(), "A must be square");
  const std::size_t n = a_.rows();
  require(b_.rows() == n, "B must have n rows");
  require(c_.cols() == n, "C must have n columns");
  require(e_.rows() == n, "E must have n rows");
  require(d_.rows() == c_.rows() && d_.cols() == b_.cols(), "D must be q x m");
  require(f_.rows() == c_.rows() && f_.cols() == e_.cols(), "F must be q x p");
  metzler_a_ = is_metzler(a_);
  nonneg_e_ = is_nonnegative(e_);
  nonneg_c_ = is_nonnegative(c_);
  nonneg_f_ = is_nonnegative(f_);
}

PositiveLtiSystem PositiveLtiSystem::without_input(Mat a, Mat c, Mat e, Mat f) {
  const std::size_t n = a.rows();
  const std::size_t q = c.rows();
  return PositiveLtiSystem(std::move(a), Mat(n, 0), std::move(c), Mat(q, 0), std::move(e),
                           std::move(f));
}

PositivityReport classify(const PositiveLtiSystem& sys, double tol) {
  PositivityReport r;
  collect_negative(sys.A(), "A", true, tol, r.violations);
  collect_negative(sys.E(), "E", false, tol, r.violations);
  collect_negative(sys.C(), "C", false, tol, r.violations);
  collect_negative(sys.F(), "F", false, tol, r.violations);
  r.is_positive = r.violations.empty();
  return r;
}

PositiveLtiSystem transpose_system(const PositiveLtiSystem& sys) {
  return PositiveLtiSystem::without_input(sys.A().transpose(), sys.E().transpose(),
                                          sys.C().transpose(), sys.F().transpose());
}

bool is_stable(const Mat& a, const StrictnessPolicy& policy) {
  if (!is_metzler(a)) {
    throw ClassificationError("stability test by LP requires a Metzler matrix");
  }
  policy.validate();
  const std::size_t n = a.rows();
  LinearProgram lp = LinearProgram::with_vars(n);
  for (std::size_t i = 0; i < n; ++i) lp.var_lower[i] = policy.lambda_floor;
  for (std::size_t j = 0; j < n; ++j) {
    lp.rows.push_back(strictify(StrictRow{a.col_vec(j), 0.0, StrictSense::kNegative}, policy));
  }
  return solve_lp(lp).status == LpStatus::kOptimal;
}

bool is_stable(const PositiveLtiSystem& sys, const StrictnessPolicy& policy) {
  return is_stable(sys.A(), policy);
}

Mat static_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy) {
  if (!is_stable(sys.A(), policy)) throw StabilityError("A is not Hurwitz");
  return sys.F() - sys.C() * solve(sys.A(), sys.E());
}

OracleGains gains_of_static_gain(const Mat& h0) {
  OracleGains g;
  for (double s : h0.col_sums()) g.l1 = std::max(g.l1, s);
  for (double s : h0.row_sums()) g.linf = std::max(g.linf, s);
  return g;
}

OracleGains oracle_gains(const PositiveLtiSystem& sys, const StrictnessPolicy& policy) {
  return gains_of_static_gain(static_gain(sys, policy));
}

PositiveLtiSystem random_positive_system(std::size_t n, std::size_t m, std::size_t p,
                                         std::size_t q, std::uint64_t seed) {
  // m == 0 gives an analysis-only system.
  if (n == 0 || p == 0 || q == 0) {
    throw DimensionError("random systems need n, p, q >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto fill = [&](std::size_t r, std::size_t c) {
    Mat x(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) x(i, j) = unit(rng);
    }
    return x;
  };
  Mat a = fill(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) off += a(i, j);
    }
    a(i, i) = -(off + 0.1 + unit(rng));
  }
  Mat b = fill(n, m);
  Mat c = fill(q, n);
  Mat d = fill(q, m);
  Mat e = fill(n, p);
  Mat f = fill(q, p);
  return PositiveLtiSystem(std::move(a), std::move(b), std::move(c), std::move(d), std::move(e),
                           std::move(f));
}

}  // namespace poslp
