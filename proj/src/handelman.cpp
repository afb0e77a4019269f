#include "poslp/handelman.hpp"

#include <cmath>
#include <string>

#include "poslp/error.hpp"

namespace poslp {

PolyVec HandelmanBasis::form(std::size_t i) const {
  if (i >= num_forms()) throw DimensionError("form index out of range");
  const std::size_t np = domain.num_params();
  const std::size_t k = i / 2;
  const bool lower = i % 2 == 0;
  Exponent e(np, 0);
  e[k] = 1;
  PolyVec p(np, Vec(1));
  p.add_term(e, Vec{lower ? 1.0 : -1.0});
  p.add_term(Exponent(np, 0), Vec{lower ? -domain.lower[k] : domain.upper[k]});
  return p;
}

PolyVec HandelmanBasis::product(const Exponent& powers) const {
  if (powers.size() != num_forms()) throw DimensionError("product arity mismatch");
  const std::size_t np = domain.num_params();
  PolyVec p = PolyVec::constant(np, Vec{1.0});
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] == 0) continue;
    const PolyVec g = form(i);
    for (unsigned t = 0; t < powers[i]; ++t) p = poly_mul(p, g);
  }
  return p;
}

std::vector<Exponent> enumerate_products(const HandelmanBasis& basis, std::size_t cap) {
  basis.domain.validate();
  // C(forms + b, b) without building the list first.
  double count = 1.0;
  for (unsigned i = 1; i <= basis.max_degree; ++i) {
    count = count * static_cast<double>(basis.num_forms() + i) / static_cast<double>(i);
  }
  if (count > static_cast<double>(cap)) {
    throw CombinatorialError("Handelman product count " + std::to_string(count) +
                             " exceeds the cap of " + std::to_string(cap));
  }
  return monomials_up_to(basis.num_forms(), basis.max_degree);
}

Mat build_upsilon(const HandelmanBasis& basis, const std::vector<Exponent>& products) {
  const auto mons = monomials_up_to(basis.domain.num_params(), basis.max_degree);
  Mat u(mons.size(), products.size());
  for (std::size_t k = 0; k < products.size(); ++k) {
    const PolyVec p = basis.product(products[k]);
    for (std::size_t a = 0; a < mons.size(); ++a) u(a, k) = p.coefficient(mons[a])[0];
  }
  return u;
}

Mat build_upsilon(const HandelmanBasis& basis) {
  return build_upsilon(basis, enumerate_products(basis));
}

std::vector<std::size_t> select_square_block(const Mat& upsilon,
                                             const std::vector<Exponent>& products) {
  const std::size_t rows = upsilon.rows();
  std::vector<std::size_t> order;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < products.size(); ++k) {
      bool lower_only = true;
      for (std::size_t i = 1; i < products[k].size(); i += 2) lower_only &= products[k][i] == 0;
      if (lower_only == (pass == 0)) order.push_back(k);
    }
  }
  std::vector<std::size_t> chosen;
  std::vector<Vec> ortho;
  for (std::size_t k : order) {
    if (chosen.size() == rows) break;
    Vec v = upsilon.col_vec(k);
    const double norm0 = std::sqrt(v.dot(v));
    if (norm0 == 0.0) continue;
    for (int rep = 0; rep < 2; ++rep) {
      for (const Vec& u : ortho) v -= v.dot(u) * u;
    }
    const double norm = std::sqrt(v.dot(v));
    if (norm <= 1e-9 * norm0) continue;
    v *= 1.0 / norm;
    ortho.push_back(std::move(v));
    chosen.push_back(k);
  }
  if (chosen.size() != rows) chosen.clear();
  return chosen;
}

const char* to_string(RelaxationForm form) {
  return form == RelaxationForm::kFull ? "full" : "reduced";
}

namespace {

struct Prepared {
  RelaxedProgram out;
  std::vector<Exponent> monomials;
};

// Shared set-up: product list, upsilon, multiplier variable blocks.
Prepared prepare(const RobustLinearProgram& rlp, const HandelmanBasis& basis,
                 RelaxationForm form, std::size_t block_size_hint) {
  rlp.validate();
  if (basis.domain.lower != rlp.domain.lower || basis.domain.upper != rlp.domain.upper) {
    throw DomainError("Handelman basis and robust LP use different boxes");
  }
  Prepared p;
  RelaxedProgram& r = p.out;
  r.form = form;
  r.num_original_vars = rlp.num_vars;
  r.products = enumerate_products(basis);
  r.upsilon = build_upsilon(basis, r.products);
  p.monomials = monomials_up_to(rlp.domain.num_params(), basis.max_degree);
  r.block_size = block_size_hint;
  for (std::size_t i = 0; i < rlp.rows.size(); ++i) {
    const RobustRow& row = rlp.rows[i];
    if (row.is_constant()) continue;
    if (row.form.degree() > basis.max_degree) {
      throw DegreeError("robust row of degree " + std::to_string(row.form.degree()) +
                        " exceeds the Handelman degree " + std::to_string(basis.max_degree));
    }
    if (row.sense == StrictSense::kPositive) {
      throw ValidationError("robust rows must be posed as <= 0, < 0 or = 0");
    }
    if (row.sense == StrictSense::kZero) continue;
    r.relaxed_rows.push_back(i);
  }
  LinearProgram& lp = r.lp;
  lp = empty_program(rlp);
  const std::size_t extra = r.relaxed_rows.size() * r.block_size;
  lp.num_vars += extra;
  lp.objective = Vec([&] {
    std::vector<double> o(rlp.objective.begin(), rlp.objective.end());
    o.resize(lp.num_vars, 0.0);
    return o;
  }());
  for (std::size_t b = 0; b < r.relaxed_rows.size(); ++b) {
    r.block_offsets.push_back(rlp.num_vars + b * r.block_size);
    for (std::size_t k = 0; k < r.block_size; ++k) {
      lp.var_lower.push_back(-kInf);
      lp.var_upper.push_back(0.0);
      lp.names.push_back((form == RelaxationForm::kFull ? "q[" : "r[") +
                         std::to_string(r.relaxed_rows[b]) + "][" + std::to_string(k) + "]");
    }
  }
  return p;
}

// x-part of the coefficient form at a monomial, padded to the LP width, and
// its constant entry.
std::pair<Vec, double> split(const Vec& form, std::size_t num_orig, std::size_t width) {
  Vec coeffs(width);
  for (std::size_t j = 0; j < num_orig; ++j) coeffs[j] = form[j];
  return {std::move(coeffs), form[num_orig]};
}

void add_zero_rows(const RobustRow& row, const std::vector<Exponent>& monomials,
                   std::size_t num_orig, LinearProgram& lp, const StrictnessPolicy& policy) {
  for (const Exponent& a : monomials) {
    if (total_degree(a) > row.form.degree()) break;
    auto [coeffs, c] = split(row.form.coefficient(a), num_orig, lp.num_vars);
    lp.rows.push_back(strictify(StrictRow{std::move(coeffs), c, StrictSense::kZero}, policy));
  }
}

double strict_margin(const RobustRow& row, const Exponent& a, const StrictnessPolicy& policy) {
  return row.sense == StrictSense::kNegative && total_degree(a) == 0 ? policy.epsilon : 0.0;
}

}  // namespace

RelaxedProgram relax_full(const RobustLinearProgram& rlp, const HandelmanBasis& basis) {
  const std::size_t nprod = enumerate_products(basis).size();
  Prepared prep = prepare(rlp, basis, RelaxationForm::kFull, nprod);
  RelaxedProgram& r = prep.out;
  LinearProgram& lp = r.lp;
  std::size_t block = 0;
  for (std::size_t i = 0; i < rlp.rows.size(); ++i) {
    const RobustRow& row = rlp.rows[i];
    if (row.is_constant()) {
      LpRow c = constant_row(row, rlp.num_vars, rlp.policy);
      std::vector<double> v(c.coeffs.begin(), c.coeffs.end());
      v.resize(lp.num_vars, 0.0);
      lp.add_row(Vec(std::move(v)), c.relation, c.rhs);
      continue;
    }
    if (row.sense == StrictSense::kZero) {
      add_zero_rows(row, prep.monomials, rlp.num_vars, lp, rlp.policy);
      continue;
    }
    const std::size_t off = r.block_offsets[block++];
    for (std::size_t a = 0; a < prep.monomials.size(); ++a) {
      const Exponent& alpha = prep.monomials[a];
      auto [coeffs, c] = split(row.form.coefficient(alpha), rlp.num_vars, lp.num_vars);
      for (std::size_t k = 0; k < nprod; ++k) coeffs[off + k] = 0.0 - r.upsilon(a, k);
      lp.add_row(std::move(coeffs), Relation::kEqual, 0.0 - (c + strict_margin(row, alpha, rlp.policy)));
    }
  }
  return std::move(prep.out);
}

RelaxedProgram relax_reduced(const RobustLinearProgram& rlp, const HandelmanBasis& basis) {
  const auto products = enumerate_products(basis);
  const Mat upsilon = build_upsilon(basis, products);
  const std::vector<std::size_t> block_cols = select_square_block(upsilon, products);
  if (block_cols.empty()) return relax_full(rlp, basis);
  const std::size_t nmon = upsilon.rows();
  Mat u2(nmon, nmon);
  for (std::size_t k = 0; k < nmon; ++k) {
    for (std::size_t a = 0; a < nmon; ++a) u2(a, k) = upsilon(a, block_cols[k]);
  }
  Mat w;
  try {
    w = LuDecomposition(u2).inverse();
  } catch (const SingularityError&) {
    return relax_full(rlp, basis);
  }
  std::vector<std::size_t> tail;
  {
    std::vector<bool> in_block(products.size(), false);
    for (std::size_t k : block_cols) in_block[k] = true;
    for (std::size_t k = 0; k < products.size(); ++k) {
      if (!in_block[k]) tail.push_back(k);
    }
  }
  Mat u1(nmon, tail.size());
  for (std::size_t t = 0; t < tail.size(); ++t) {
    for (std::size_t a = 0; a < nmon; ++a) u1(a, t) = upsilon(a, tail[t]);
  }
  const Mat wu1 = w * u1;

  Prepared prep = prepare(rlp, basis, RelaxationForm::kReduced, tail.size());
  RelaxedProgram& r = prep.out;
  r.block_columns = block_cols;
  r.tail_columns = tail;
  LinearProgram& lp = r.lp;
  std::size_t block = 0;
  for (std::size_t i = 0; i < rlp.rows.size(); ++i) {
    const RobustRow& row = rlp.rows[i];
    if (row.is_constant()) {
      LpRow c = constant_row(row, rlp.num_vars, rlp.policy);
      std::vector<double> v(c.coeffs.begin(), c.coeffs.end());
      v.resize(lp.num_vars, 0.0);
      lp.add_row(Vec(std::move(v)), c.relation, c.rhs);
      continue;
    }
    if (row.sense == StrictSense::kZero) {
      add_zero_rows(row, prep.monomials, rlp.num_vars, lp, rlp.policy);
      continue;
    }
    const std::size_t off = r.block_offsets[block++];
    r.row_offsets.push_back(lp.rows.size());
    // Coefficient forms of P (+ eps) over all monomials.
    std::vector<Vec> forms;
    for (const Exponent& alpha : prep.monomials) {
      Vec f = row.form.coefficient(alpha);
      f[rlp.num_vars] += strict_margin(row, alpha, rlp.policy);
      forms.push_back(std::move(f));
    }
    for (std::size_t i2 = 0; i2 < nmon; ++i2) {
      Vec coeffs(lp.num_vars);
      double c = 0.0;
      for (std::size_t a = 0; a < nmon; ++a) {
        const double wa = w(i2, a);
        if (wa == 0.0) continue;
        for (std::size_t j = 0; j < rlp.num_vars; ++j) coeffs[j] += wa * forms[a][j];
        c += wa * forms[a][rlp.num_vars];
      }
      for (std::size_t t = 0; t < tail.size(); ++t) coeffs[off + t] = 0.0 - wu1(i2, t);
      lp.add_row(std::move(coeffs), Relation::kLessEqual, 0.0 - c);
    }
  }
  return std::move(prep.out);
}

HandelmanCertificate extract_certificate(const RelaxedProgram& relaxed, const Vec& x) {
  HandelmanCertificate cert;
  cert.form = relaxed.form;
  cert.products = relaxed.products;
  cert.upsilon_rows = relaxed.upsilon.rows();
  cert.upsilon_cols = relaxed.upsilon.cols();
  cert.relaxed_rows = relaxed.relaxed_rows;
  for (std::size_t i = 0; i < relaxed.block_offsets.size(); ++i) {
    const std::size_t off = relaxed.block_offsets[i];
    if (relaxed.form == RelaxationForm::kFull) {
      Vec b(relaxed.block_size);
      for (std::size_t k = 0; k < relaxed.block_size; ++k) b[k] = x[off + k];
      cert.blocks.push_back(std::move(b));
      continue;
    }
    // Block multipliers are the slacks W (P - U1 r) of the reduced rows.
    Vec b(relaxed.products.size());
    for (std::size_t t = 0; t < relaxed.tail_columns.size(); ++t) {
      b[relaxed.tail_columns[t]] = x[off + t];
    }
    for (std::size_t k = 0; k < relaxed.block_columns.size(); ++k) {
      const LpRow& row = relaxed.lp.rows[relaxed.row_offsets[i] + k];
      double v = 0.0 - row.rhs;
      for (std::size_t j = 0; j < x.size(); ++j) v += row.coeffs[j] * x[j];
      b[relaxed.block_columns[k]] = v;
    }
    cert.blocks.push_back(std::move(b));
  }
  return cert;
}

}  // namespace poslp
