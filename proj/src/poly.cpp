#include "poslp/poly.hpp"

#include <cmath>

namespace poslp {

unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

bool MonomialOrder::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return b < a;
}

namespace {

void fill_degree(std::size_t k, unsigned remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (k + 1 == cur.size()) {
    cur[k] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned x = remaining + 1; x-- > 0;) {
    cur[k] = x;
    fill_degree(k + 1, remaining - x, cur, out);
  }
  cur[k] = 0;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t num_params, unsigned degree) {
  std::vector<Exponent> out;
  if (num_params == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(num_params, 0);
  fill_degree(0, degree, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to(std::size_t num_params, unsigned degree) {
  std::vector<Exponent> out;
  for (unsigned d = 0; d <= degree; ++d) {
    auto layer = monomials_of_degree(num_params, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

double monomial_value(const Exponent& e, std::span<const double> point) {
  double v = 1.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    for (unsigned i = 0; i < e[k]; ++i) v *= point[k];
  }
  return v;
}

BoxDomain BoxDomain::unit(std::size_t num_params) {
  return BoxDomain{std::vector<double>(num_params, 0.0), std::vector<double>(num_params, 1.0)};
}

void BoxDomain::validate() const {
  if (lower.size() != upper.size()) throw DimensionError("box bound lengths differ");
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || !(lower[k] < upper[k])) {
      throw DomainError("box needs finite lower < upper in every coordinate");
    }
  }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionError("exponent arity mismatch");
  Exponent s(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
  return s;
}

PolyVec poly_mul(const PolyVec& a, const PolyVec& b) {
  if (a.num_params() != b.num_params()) throw DimensionError("parameter count mismatch");
  const std::size_t da = a.zero().size();
  const std::size_t db = b.zero().size();
  if (da != db && da != 1 && db != 1) throw DimensionError("polynomial vector lengths differ");
  const std::size_t dim = std::max(da, db);
  PolyVec out(a.num_params(), Vec(dim));
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Vec c(dim);
      for (std::size_t i = 0; i < dim; ++i) c[i] = ca[da == 1 ? 0 : i] * cb[db == 1 ? 0 : i];
      out.add_term(add_exponents(ea, eb), c);
    }
  }
  return out;
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.num_params() != b.num_params()) throw DimensionError("parameter count mismatch");
  if (a.zero().cols() != b.zero().rows()) throw DimensionError("inner dimensions differ");
  PolyMatrix out(a.num_params(), Mat(a.zero().rows(), b.zero().cols()));
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) out.add_term(add_exponents(ea, eb), ca * cb);
  }
  return out;
}

PolyVec poly_left_multiply(const PolyVec& x, const PolyMatrix& m) {
  if (x.num_params() != m.num_params()) throw DimensionError("parameter count mismatch");
  if (x.zero().size() != m.zero().rows()) throw DimensionError("vector length must match rows");
  PolyVec out(x.num_params(), Vec(m.zero().cols()));
  for (const auto& [ex, cx] : x.terms()) {
    for (const auto& [em, cm] : m.terms()) out.add_term(add_exponents(ex, em), left_multiply(cx, cm));
  }
  return out;
}

PolyMatrix poly_transpose(const PolyMatrix& m) {
  PolyMatrix out(m.num_params(), m.zero().transpose());
  for (const auto& [e, c] : m.terms()) out.add_term(e, c.transpose());
  return out;
}

std::vector<Vec> coefficient_rows(const PolyVec& p, unsigned degree) {
  if (p.degree() > degree) throw DegreeError("polynomial degree exceeds the requested degree");
  std::vector<Vec> rows;
  for (const Exponent& e : monomials_up_to(p.num_params(), degree)) rows.push_back(p.coefficient(e));
  return rows;
}

PolyVec from_coefficient_rows(std::size_t num_params, unsigned degree,
                              const std::vector<Vec>& rows) {
  const auto mons = monomials_up_to(num_params, degree);
  if (rows.size() != mons.size()) throw DimensionError("coefficient row count mismatch");
  if (rows.empty()) throw DimensionError("no coefficient rows");
  PolyVec p(num_params, Vec(rows[0].size()));
  for (std::size_t i = 0; i < mons.size(); ++i) p.add_term(mons[i], rows[i]);
  return p;
}

}  // namespace poslp
