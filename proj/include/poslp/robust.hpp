#pragma once

#include <string>
#include <vector>

#include "poslp/gains.hpp"
#include "poslp/handelman.hpp"
#include "poslp/ilc.hpp"
#include "poslp/lft.hpp"
#include "poslp/polysys.hpp"
#include "poslp/robust_lp.hpp"
#include "poslp/synthesis.hpp"

namespace poslp {

/// Robust program together with the layout of its leading variables:
/// lambda[0..n), gamma at index n, then any controller variables, then the
/// scaling coefficients.
struct RobustProgram {
  RobustLinearProgram rlp;
  std::size_t n = 0;
  std::size_t m = 0;  // controller inputs (synthesis only)
  std::size_t scaling_offset = 0;
  ScalingConstraintSet scalings;

  std::size_t gamma_index() const { return n; }
};

/// Robust L1 gain of the LFT with integral linear constraints on Delta.
RobustProgram robust_l1(const LftSystem& lft, const ScalingTemplate& scaling,
                        const StrictnessPolicy& policy = {});
/// Robust L-infinity gain: the L1 program of the transposed LFT.
RobustProgram robust_linf(const TransposedLft& tlft, const ScalingTemplate& scaling,
                          const StrictnessPolicy& policy = {});

/// Controller u = K x, common to every delta in the box, keeping the closed
/// loop positive and stable with L-infinity gain below gamma. B and D must not
/// be empty; E and F must be nonnegative on the box.
RobustProgram robust_stabilize(const PolySystem& psys, const ScalingTemplate& scaling,
                               const ControllerSpec& spec = {},
                               const StrictnessPolicy& policy = {});

struct RelaxationOptions {
  RelaxationForm form = RelaxationForm::kReduced;
  unsigned degree = 0;  // 0: program degree + 2
};

struct RobustSolveResult {
  LpStatus status = LpStatus::kInfeasible;
  double gamma = 0.0;
  Vec lambda;
  Vec x;  // variables of the robust program
  unsigned handelman_degree = 0;
  RelaxedProgram relaxed;
  LpSolution solution;
  HandelmanCertificate certificate;

  bool feasible() const { return status == LpStatus::kOptimal; }
};

RobustSolveResult solve_robust(const RobustProgram& prog, const RelaxationOptions& opts = {});

/// Controller read off a feasible synthesis solution.
SynthesisResult robust_controller(const RobustProgram& prog, const RobustSolveResult& res);

struct ExactGainResult {
  bool feasible = false;
  double gamma = 0.0;
  Vec lambda;
  LinearProgram lp;
  LpSolution solution;
};

/// Gain bound for the known constant Delta = delta0 >= 0 using saturated
/// scalings; a finite LP with no relaxation.
ExactGainResult exact_constant_delta(const LftSystem& lft, const Mat& delta0,
                                     const StrictnessPolicy& policy = {});

enum class GainNorm { kL1, kLinf };

const char* to_string(GainNorm norm);

struct VertexGainResult {
  double gamma = 0.0;
  Vec lambda;
  std::size_t num_vertices = 0;
  LinearProgram lp;
  LpSolution solution;
};

/// Common copositive certificate over the corners of the box for a system
/// affine in delta. Throws DegreeError above degree one, CombinatorialError
/// above 20 parameters, ClassificationError when a corner is not positive and
/// StabilityError when no common certificate exists.
VertexGainResult vertex_gain(const PolySystem& psys, GainNorm norm,
                             const StrictnessPolicy& policy = {});

enum class GridStatus { kConsistent, kRefuted, kInconclusive };

const char* to_string(GridStatus status);

/// Pointwise check of a robust result. It can refute a bound, never prove it.
struct GridVerdict {
  GridStatus status = GridStatus::kConsistent;
  std::size_t points = 0;
  double worst_gain = 0.0;
  std::vector<double> worst_point;
  std::string detail;
};

/// Checks that the closed LFT is stable with L1 gain at most gamma at every
/// grid point. For the L-infinity gain pass the transposed LFT.
GridVerdict certify_gain_on_grid(const LftSystem& lft, double gamma, std::size_t points = 101);

/// Same check on the frozen polynomial system for either gain.
GridVerdict certify_gain_on_grid(const PolySystem& psys, GainNorm norm, double gamma,
                                 std::size_t points = 101);

/// Checks positivity, stability and the L-infinity bound of the closed loop.
GridVerdict certify_controller_on_grid(const PolySystem& psys, const Mat& k, double gamma,
                                       std::size_t points = 101);

/// Grid points per parameter that keep the total at or below the grid cap.
std::size_t effective_grid_points(std::size_t num_params, std::size_t points);

}  // namespace poslp
