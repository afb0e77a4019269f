#pragma once

#include <vector>

#include "poslp/lpcore.hpp"
#include "poslp/poly.hpp"
#include "poslp/robust_lp.hpp"

namespace poslp {

/// Linear forms that cut out a box: for each parameter k, delta_k - lower_k
/// (form 2k) and upper_k - delta_k (form 2k+1). Products of total degree up
/// to max_degree are used as certificates.
struct HandelmanBasis {
  BoxDomain domain;
  unsigned max_degree = 2;

  std::size_t num_forms() const { return 2 * domain.num_params(); }
  PolyVec form(std::size_t i) const;
  /// prod_i form(i)^powers[i] as a scalar polynomial.
  PolyVec product(const Exponent& powers) const;
};

inline constexpr std::size_t kDefaultProductCap = 10'000;

/// Exponent tuples over the forms with total degree 0..max_degree (the
/// constant product first), in monomial order. Throws CombinatorialError
/// above `cap` products.
std::vector<Exponent> enumerate_products(const HandelmanBasis& basis,
                                         std::size_t cap = kDefaultProductCap);

/// Column k holds the monomial coefficients of product k; rows follow
/// monomials_up_to(N, max_degree).
Mat build_upsilon(const HandelmanBasis& basis, const std::vector<Exponent>& products);
Mat build_upsilon(const HandelmanBasis& basis);

/// Columns of a nonsingular square block of upsilon, preferring products of
/// the lower forms only. Empty if upsilon does not have full row rank.
std::vector<std::size_t> select_square_block(const Mat& upsilon,
                                             const std::vector<Exponent>& products);

enum class RelaxationForm { kFull, kReduced };

const char* to_string(RelaxationForm form);

struct RelaxedProgram {
  LinearProgram lp;
  RelaxationForm form = RelaxationForm::kFull;
  std::size_t num_original_vars = 0;
  std::vector<Exponent> products;
  Mat upsilon;
  std::vector<std::size_t> block_columns;  // nonsingular square block (reduced form)
  std::vector<std::size_t> tail_columns;   // remaining columns (reduced form)
  std::vector<std::size_t> relaxed_rows;   // robust rows that received multipliers
  std::vector<std::size_t> block_offsets;  // first multiplier variable of each
  std::size_t block_size = 0;
  std::vector<std::size_t> row_offsets;  // reduced form: first LP row of each block
};

/// Equality-matching form: P(x, delta) (+ eps for strict rows) equals
/// sum_k q_k h_k(delta) with q_k <= 0, matched on every monomial up to
/// max_degree. Throws DegreeError when a row exceeds max_degree.
RelaxedProgram relax_full(const RobustLinearProgram& rlp, const HandelmanBasis& basis);

/// The equalities solved for the square block: W (P - U1 r) <= 0, r <= 0,
/// with W the inverse of the block. Falls back to relax_full when no
/// nonsingular block exists.
RelaxedProgram relax_reduced(const RobustLinearProgram& rlp, const HandelmanBasis& basis);

struct HandelmanCertificate {
  RelaxationForm form = RelaxationForm::kFull;
  std::vector<Exponent> products;
  std::size_t upsilon_rows = 0;
  std::size_t upsilon_cols = 0;
  std::vector<std::size_t> relaxed_rows;
  std::vector<Vec> blocks;  // one multiplier (<= 0) per product, per relaxed row
};

HandelmanCertificate extract_certificate(const RelaxedProgram& relaxed, const Vec& x);

}  // namespace poslp
