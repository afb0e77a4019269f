#pragma once

#include "poslp/lpcore.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

struct GainResult {
  double gamma = 0.0;
  Vec lambda;
  LinearProgram lp;
  LpSolution solution;
};

/// min gamma  s.t.  lambda^T A + 1^T C < 0,  lambda^T E - gamma 1^T + 1^T F < 0,
/// lambda >= floor, gamma >= 0. Variables are ordered (lambda, gamma).
LinearProgram l1_gain_program(const Mat& a, const Mat& c, const Mat& e, const Mat& f,
                              const StrictnessPolicy& policy);

/// Solves a program built by l1_gain_program (or one with the same leading
/// variables). Throws StabilityError when it is infeasible.
GainResult solve_gain_program(LinearProgram lp, std::size_t n);

/// Throws ClassificationError for non-positive systems, StabilityError when
/// no copositive certificate exists.
GainResult l1_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy = {});

/// The L1 program of the transposed system.
GainResult linf_gain(const PositiveLtiSystem& sys, const StrictnessPolicy& policy = {});

}  // namespace poslp
