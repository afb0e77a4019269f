#include "poslp/ilc.hpp"

#include <sstream>

#include "poslp/error.hpp"

namespace poslp {

namespace {

std::string exponent_label(const Exponent& e) {
  std::string s = "(";
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(e[k]);
  }
  return s + ")";
}

// phi1 + M^T phi2 as n0 polynomials whose coefficients are affine forms over
// the local phi variables.
std::vector<PolyVec> ilc_polynomials(const ScalingConstraintSet& s, const PolyMatrix& m) {
  const std::size_t width = s.num_vars() + 1;
  std::vector<PolyVec> out;
  for (std::size_t c = 0; c < s.n0; ++c) {
    PolyVec p(s.num_params, Vec(width));
    for (std::size_t k = 0; k < s.phi1_monomials.size(); ++k) {
      Vec f(width);
      f[s.phi1_index(c, k)] = 1.0;
      p.add_term(s.phi1_monomials[k], f);
    }
    for (const auto& [beta, mb] : m.terms()) {
      for (std::size_t r = 0; r < s.n0; ++r) {
        const double w = mb(r, c);
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < s.phi2_monomials.size(); ++k) {
          Vec f(width);
          f[s.phi2_index(r, k)] = w;
          p.add_term(add_exponents(beta, s.phi2_monomials[k]), f);
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

void saturate(ScalingConstraintSet& s, const PolyMatrix& m) {
  for (const PolyVec& p : ilc_polynomials(s, m)) {
    for (const auto& [e, form] : p.terms()) s.equalities.push_back(form);
  }
}

PolyMatrix constant_matrix(std::size_t num_params, const Mat& m) {
  return PolyMatrix::constant(num_params, m);
}

}  // namespace

std::string describe(const ScalingTemplate& t) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FreeConstant>) {
          os << "constant scalings";
        } else if constexpr (std::is_same_v<T, FreePolynomial>) {
          os << (v.saturate ? "saturated " : "") << "polynomial scalings of degree " << v.degree;
        } else if constexpr (std::is_same_v<T, SaturatedStaticGain>) {
          os << "saturated static gain";
        } else if constexpr (std::is_same_v<T, TimeVaryingDelay>) {
          os << "time-varying delay, derivative bound " << v.mu_delay;
        } else {
          os << "constant delay";
        }
      },
      t);
  return os.str();
}

std::string ScalingConstraintSet::var_name(std::size_t local) const {
  const std::size_t n1 = n0 * phi1_monomials.size();
  if (local < n1) {
    const std::size_t c = local / phi1_monomials.size();
    const std::size_t k = local % phi1_monomials.size();
    return "phi1[" + std::to_string(c) + "]" + exponent_label(phi1_monomials[k]);
  }
  local -= n1;
  const std::size_t c = local / phi2_monomials.size();
  const std::size_t k = local % phi2_monomials.size();
  return "phi2[" + std::to_string(c) + "]" + exponent_label(phi2_monomials[k]);
}

ScalingConstraintSet instantiate(const ScalingTemplate& t, const PolyMatrix& delta) {
  if (delta.zero().rows() != delta.zero().cols()) throw DimensionError("Delta must be square");
  ScalingConstraintSet s;
  s.n0 = delta.zero().rows();
  s.num_params = delta.num_params();
  const std::size_t np = s.num_params;
  const std::vector<Exponent> constant{Exponent(np, 0)};

  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FreeConstant>) {
          s.phi1_monomials = constant;
          s.phi2_monomials = constant;
          for (PolyVec& p : ilc_polynomials(s, delta)) s.nonnegative.push_back(std::move(p));
        } else if constexpr (std::is_same_v<T, FreePolynomial>) {
          if (v.saturate) {
            if (v.degree == 0) throw DomainError("saturated polynomial scalings need degree >= 1");
            s.phi1_monomials = monomials_up_to(np, v.degree);
            s.phi2_monomials = monomials_up_to(np, v.degree - 1);
            saturate(s, delta);
          } else {
            s.phi1_monomials = monomials_up_to(np, v.degree);
            s.phi2_monomials = monomials_up_to(np, v.degree);
            for (PolyVec& p : ilc_polynomials(s, delta)) s.nonnegative.push_back(std::move(p));
          }
        } else if constexpr (std::is_same_v<T, SaturatedStaticGain>) {
          if (v.delta0.rows() != s.n0 || v.delta0.cols() != s.n0) {
            throw DimensionError("static gain must be n0 x n0");
          }
          if (!is_nonnegative(v.delta0)) throw DomainError("static gain must be nonnegative");
          s.phi1_monomials = constant;
          s.phi2_monomials = constant;
          saturate(s, constant_matrix(np, v.delta0));
        } else if constexpr (std::is_same_v<T, TimeVaryingDelay>) {
          if (!(v.mu_delay < 1.0)) throw DomainError("delay derivative bound must be < 1");
          s.phi1_monomials = constant;
          s.phi2_monomials = constant;
          for (std::size_t c = 0; c < s.n0; ++c) {
            Vec f(s.num_vars() + 1);
            f[s.phi2_index(c, 0)] = 1.0;
            f[s.phi1_index(c, 0)] = 1.0 - v.mu_delay;
            s.equalities.push_back(std::move(f));
            s.nonnegative_vars.push_back(s.phi1_index(c, 0));
          }
        } else {
          s.phi1_monomials = constant;
          s.phi2_monomials = constant;
          saturate(s, constant_matrix(np, Mat::identity(s.n0)));
        }
      },
      t);
  return s;
}

}  // namespace poslp
