#pragma once

#include <span>

#include "poslp/poly.hpp"
#include "poslp/sysmodel.hpp"

namespace poslp {

/// System whose matrices depend polynomially on delta in a box:
/// x' = A(d) x + B(d) u + E(d) w,  z = C(d) x + D(d) u + F(d) w.
struct PolySystem {
  std::size_t n = 0, m = 0, p = 0, q = 0;
  PolyMatrix A, B, C, D, E, F;
  BoxDomain domain;

  /// Zero polynomials of the right shapes over the unit box.
  static PolySystem zeros(std::size_t n, std::size_t m, std::size_t p, std::size_t q,
                          std::size_t num_params);
  /// Parameter-free system (num_params = 0).
  static PolySystem from_constant(const PositiveLtiSystem& sys);

  std::size_t num_params() const { return domain.num_params(); }
  unsigned degree() const;
  /// Throws DimensionError / DomainError on inconsistent data.
  void validate() const;

  PositiveLtiSystem freeze(std::span<const double> delta) const;
};

/// (A^T, C^T, E^T, F^T) coefficientwise; B and D are dropped.
PolySystem transpose(const PolySystem& sys);

/// Grid of `points` values per parameter over the box, capped at `max_total`
/// points overall (the per-parameter count is reduced to fit).
std::vector<std::vector<double>> box_grid(const BoxDomain& box, std::size_t points,
                                          std::size_t max_total = 1'000'000);

}  // namespace poslp
