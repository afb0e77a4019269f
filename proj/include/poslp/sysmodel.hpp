#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poslp/lpcore.hpp"
#include "poslp/numlin.hpp"

namespace poslp {

/// x' = A x + B u + E w,  z = C x + D u + F w.
///
/// B and D may have zero columns (analysis-only systems).
class PositiveLtiSystem {
 public:
  PositiveLtiSystem() = default;
  /// Throws DimensionError unless the shapes fit together.
  PositiveLtiSystem(Mat a, Mat b, Mat c, Mat d, Mat e, Mat f);
  /// System without a control input.
  static PositiveLtiSystem without_input(Mat a, Mat c, Mat e, Mat f);

  std::size_t n() const { return a_.rows(); }
  std::size_t m() const { return b_.cols(); }
  std::size_t p() const { return e_.cols(); }
  std::size_t q() const { return c_.rows(); }
  bool has_input() const { return m() > 0; }

  const Mat& A() const { return a_; }
  const Mat& B() const { return b_; }
  const Mat& C() const { return c_; }
  const Mat& D() const { return d_; }
  const Mat& E() const { return e_; }
  const Mat& F() const { return f_; }

  bool metzler_A() const { return metzler_a_; }
  bool nonneg_E() const { return nonneg_e_; }
  bool nonneg_C() const { return nonneg_c_; }
  bool nonneg_F() const { return nonneg_f_; }
  bool is_positive() const { return metzler_a_ && nonneg_e_ && nonneg_c_ && nonneg_f_; }

  friend bool operator==(const PositiveLtiSystem& x, const PositiveLtiSystem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_ && x.e_ == y.e_ &&
           x.f_ == y.f_;
  }

 private:
  Mat a_, b_, c_, d_, e_, f_;
  bool metzler_a_ = false;
  bool nonneg_e_ = false;
  bool nonneg_c_ = false;
  bool nonneg_f_ = false;
};

struct SignViolation {
  std::string matrix;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

struct PositivityReport {
  bool is_positive = true;
  std::vector<SignViolation> violations;
};

/// Lists every negative off-diagonal entry of A and negative entry of E, C, F.
PositivityReport classify(const PositiveLtiSystem& sys, double tol = 0.0);

/// (A^T, C^T, E^T, F^T): input and output roles swapped. B and D are dropped.
PositiveLtiSystem transpose_system(const PositiveLtiSystem& sys);

/// Metzler-Hurwitz test: feasibility of {lambda >= floor, lambda^T A <= -eps}.
/// Throws ClassificationError when A is not Metzler.
bool is_stable(const Mat& a, const StrictnessPolicy& policy = {});
bool is_stable(const PositiveLtiSystem& sys, const StrictnessPolicy& policy = {});

/// F - C A^{-1} E. Throws StabilityError if A is not Hurwitz.
Mat static_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy = {});

struct OracleGains {
  double l1 = 0.0;    // max column sum of the static gain
  double linf = 0.0;  // max row sum
};

OracleGains gains_of_static_gain(const Mat& h0);
OracleGains oracle_gains(const PositiveLtiSystem& sys, const StrictnessPolicy& policy = {});

/// Metzler, row-diagonally-dominant A and uniform nonnegative B..F.
PositiveLtiSystem random_positive_system(std::size_t n, std::size_t m, std::size_t p,
                                         std::size_t q, std::uint64_t seed);

}  // namespace poslp
