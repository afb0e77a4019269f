#pragma once

#include <utility>
#include <vector>

#include "poslp/lpcore.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

/// Admissible gain set for u = K x. An empty zero pattern and empty bound
/// matrices mean an unconstrained K; both restrictions may be combined.
struct ControllerSpec {
  /// (row, col) entries of K (m x n) forced to zero.
  std::vector<std::pair<std::size_t, std::size_t>> zero_pattern;
  /// Elementwise bounds K_lower <= K <= K_upper; either both or neither.
  Mat k_lower;
  Mat k_upper;

  static ControllerSpec full() { return {}; }
  static ControllerSpec structured(std::vector<std::pair<std::size_t, std::size_t>> zeros);
  static ControllerSpec bounded(Mat lower, Mat upper);

  bool has_bounds() const { return !k_lower.empty() || !k_upper.empty(); }
  /// Throws DimensionError / DomainError for inconsistent data.
  void validate(std::size_t m, std::size_t n) const;
};

struct SynthesisResult {
  Mat K;
  double gamma = 0.0;
  Vec lambda;
  std::vector<Vec> mu_col;  // K column j = mu_col[j] / lambda[j]
  LinearProgram lp;
  LpSolution solution;
};

/// Index of entry r of mu_col[j] in the synthesis variable vector
/// (lambda[0..n), gamma, mu_col[0], ..., mu_col[n-1]).
inline std::size_t mu_index(std::size_t n, std::size_t m, std::size_t j, std::size_t r) {
  return n + 1 + j * m + r;
}

/// LP whose feasibility is equivalent to the existence of K in the set making
/// the closed loop positive, stable and with L-infinity gain below gamma.
LinearProgram synthesis_program(const PositiveLtiSystem& sys, const ControllerSpec& spec,
                                const StrictnessPolicy& policy);

/// Reads K, lambda and the mu columns off an optimal synthesis-layout solution.
SynthesisResult recover_controller(const Vec& x, std::size_t n, std::size_t m);

/// Throws ModelError without B/D, InfeasibleError when no admissible K exists.
SynthesisResult stabilize_linf(const PositiveLtiSystem& sys, const ControllerSpec& spec = {},
                               const StrictnessPolicy& policy = {});

/// (A + B K, B, C + D K, D, E, F).
PositiveLtiSystem closed_loop(const PositiveLtiSystem& sys, const Mat& k);

/// Sign check of A + BK and C + DK relative to the magnitude of the terms.
bool closed_loop_positive(const PositiveLtiSystem& sys, const Mat& k, double rel_tol = 1e-12);

}  // namespace poslp
