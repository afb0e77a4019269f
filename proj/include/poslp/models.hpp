#pragma once

#include "poslp/lft.hpp"
#include "poslp/polysys.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

/// Two-compartment drug distribution model with injection into the plasma
/// compartment and output matrix `c` (q x 2).
PositiveLtiSystem drug_model(double a11, double a12, double a21, const Mat& c);

/// mRNA/protein expression model with degradation and translation rates known
/// up to the fraction `spread` of their nominal values; three parameters in
/// [-1, 1], output the protein count.
PolySystem gene_expression_model(double spread);

/// Worst-case L-infinity gain of the expression model, attained at the corner
/// with the slowest degradation and fastest translation.
double gene_expression_worst_gain(double spread);

/// Three-state system with quadratic dependence on one parameter in [0, 1],
/// two disturbances and two performance outputs.
PolySystem quadratic_uncertain_example();

/// x' = A x + A_h x(t - h) as an LFT over the delay channel: w0 = x(t - h),
/// z0 = x, no performance channel.
LftSystem delay_lft(const Mat& a, const Mat& ah);

struct DelayPair {
  Mat a;
  Mat ah;
};

/// Random Metzler A and nonnegative A_h with A + A_h row-dominant (stable)
/// or anti-dominant (unstable). Deterministic in `seed`.
DelayPair random_delay_pair(std::size_t n, bool stable, std::uint64_t seed);

}  // namespace poslp
