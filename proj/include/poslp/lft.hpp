#pragma once

#include <optional>
#include <set>
#include <span>

#include "poslp/poly.hpp"
#include "poslp/polysys.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

/// One block of loop channels. It carries delta^alpha times the state (or the
/// exogenous input) and is produced as delta_param times its parent block.
struct ChannelNode {
  Exponent alpha;
  bool state_side = true;
  std::size_t param = 0;
  long parent = -1;  // -1: the parent is x (or w) itself
  std::size_t offset = 0;
  std::size_t width = 0;
};

/// Canonical channel tree for polynomial dependence: state-side blocks first,
/// then input-side blocks, each group in monomial order.
struct ChannelLayout {
  std::size_t num_params = 0;
  std::size_t state_dim = 0;
  std::size_t input_dim = 0;
  std::size_t n0 = 0;
  std::vector<ChannelNode> nodes;

  /// Adds every nonconstant monomial of the two sets together with the
  /// prefixes needed to reach it.
  static ChannelLayout build(std::size_t num_params, std::size_t state_dim,
                             std::size_t input_dim, const std::set<Exponent, MonomialOrder>& state,
                             const std::set<Exponent, MonomialOrder>& input);

  Mat C0() const;
  Mat F00() const;
  Mat F01() const;
  /// Block-diagonal delta_param * I.
  PolyMatrix delta() const;
};

/// x' = A x + E0 w0 + E1 w1, z0 = C0 x + F00 w0 + F01 w1,
/// z1 = C1 x + F10 w0 + F11 w1, w0 = Delta(delta) z0.
struct LftSystem {
  Mat A, E0, E1, C0, C1, F00, F01, F10, F11;
  PolyMatrix delta;  // n0 x n0
  BoxDomain domain;
  std::optional<ChannelLayout> layout;

  std::size_t n() const { return A.rows(); }
  std::size_t n0() const { return C0.rows(); }
  std::size_t p() const { return E1.cols(); }
  std::size_t q() const { return C1.rows(); }
  std::size_t num_params() const { return domain.num_params(); }

  /// Throws DimensionError on inconsistent blocks.
  void validate() const;
  /// Closes the loop at a constant Delta. Throws WellPosednessError when
  /// I - Delta F00 is singular.
  PositiveLtiSystem close_with(const Mat& delta0) const;
  PositiveLtiSystem close(std::span<const double> point) const;
};

/// Throws WellPosednessError if the loop is singular somewhere on a grid with
/// `points` values per parameter.
void check_well_posed(const LftSystem& lft, std::size_t points = 11);

/// Canonical positive LFT of a polynomial system (B and D are ignored).
LftSystem lft_from_polynomial(const PolySystem& psys);

/// LFT of the transposed system; its closure at delta is the transpose of the
/// closed original.
struct TransposedLft {
  LftSystem lft;
};

TransposedLft transpose_lft(const PolySystem& psys);
/// Blockwise transpose of a user-supplied LFT.
TransposedLft transpose_lft(const LftSystem& lft);

/// Largest entrywise deviation between the closed LFT and the polynomial
/// system over `samples` pseudo-random points (deterministic in `seed`).
double closure_error(const LftSystem& lft, const PolySystem& psys, std::size_t samples,
                     std::uint64_t seed);

}  // namespace poslp
