#pragma once

#include <map>
#include <span>
#include <vector>

#include "poslp/error.hpp"
#include "poslp/numlin.hpp"

namespace poslp {

/// Exponent tuple alpha of the monomial delta^alpha.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Canonical monomial order: total degree first, then earlier parameters
/// carrying larger exponents come first (1, d1, d2, d1^2, d1 d2, d2^2, ...).
struct MonomialOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Every exponent of total degree <= degree, in MonomialOrder.
std::vector<Exponent> monomials_up_to(std::size_t num_params, unsigned degree);
/// Only the exponents of total degree exactly `degree`.
std::vector<Exponent> monomials_of_degree(std::size_t num_params, unsigned degree);

double monomial_value(const Exponent& e, std::span<const double> point);

/// Axis-aligned box lower <= delta <= upper.
struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  static BoxDomain unit(std::size_t num_params);
  std::size_t num_params() const { return lower.size(); }
  /// Throws DomainError unless lower < upper in every coordinate.
  void validate() const;
};

namespace detail {
inline bool shape_equal(const Vec& a, const Vec& b) { return a.size() == b.size(); }
inline bool shape_equal(const Mat& a, const Mat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}
}  // namespace detail

/// Polynomial in delta with coefficients of type T (Vec or Mat), stored
/// sparsely by exponent. Zero coefficients are never stored.
template <class T>
class Poly {
 public:
  using Terms = std::map<Exponent, T, MonomialOrder>;

  Poly() = default;
  /// `zero` fixes the coefficient shape.
  Poly(std::size_t num_params, T zero) : num_params_(num_params), zero_(std::move(zero)) {}

  static Poly constant(std::size_t num_params, const T& value) {
    T z = value;
    z *= 0.0;
    Poly p(num_params, std::move(z));
    p.add_term(Exponent(num_params, 0), value);
    return p;
  }

  std::size_t num_params() const { return num_params_; }
  const T& zero() const { return zero_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }
  bool is_constant() const { return degree() == 0; }

  /// Adds c * delta^e. Throws DimensionError on a shape or arity mismatch.
  void add_term(const Exponent& e, const T& c) {
    if (e.size() != num_params_) throw DimensionError("exponent arity mismatch");
    if (!detail::shape_equal(c, zero_)) throw DimensionError("coefficient shape mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c.max_abs() != 0.0) terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.max_abs() == 0.0) terms_.erase(it);
  }

  T coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }

  T eval(std::span<const double> point) const {
    if (point.size() != num_params_) throw DimensionError("evaluation point has the wrong arity");
    T out = zero_;
    for (const auto& [e, c] : terms_) {
      T term = c;
      term *= monomial_value(e, point);
      out += term;
    }
    return out;
  }

  Poly& operator+=(const Poly& other) {
    if (other.num_params_ != num_params_) throw DimensionError("parameter count mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  Poly& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.num_params_ == b.num_params_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t num_params_ = 0;
  T zero_;
  Terms terms_;
};

using PolyVec = Poly<Vec>;
using PolyMatrix = Poly<Mat>;

template <class T>
Poly<T> operator+(Poly<T> a, const Poly<T>& b) {
  a += b;
  return a;
}
template <class T>
Poly<T> operator*(Poly<T> a, double s) {
  a *= s;
  return a;
}
template <class T>
Poly<T> operator*(double s, Poly<T> a) {
  a *= s;
  return a;
}

Exponent add_exponents(const Exponent& a, const Exponent& b);

/// Product of polynomials. Vector coefficients multiply elementwise, a
/// one-dimensional factor broadcasts.
PolyVec poly_mul(const PolyVec& a, const PolyVec& b);
/// Matrix product of polynomial matrices.
PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b);
/// x(delta)^T M(delta) as a row-vector polynomial (length cols(M)).
PolyVec poly_left_multiply(const PolyVec& x, const PolyMatrix& m);
PolyMatrix poly_transpose(const PolyMatrix& m);

/// Dense coefficient list over monomials_up_to(N, degree). Throws DegreeError
/// if p has a higher degree.
std::vector<Vec> coefficient_rows(const PolyVec& p, unsigned degree);
/// Inverse of coefficient_rows.
PolyVec from_coefficient_rows(std::size_t num_params, unsigned degree,
                              const std::vector<Vec>& rows);

}  // namespace poslp
