#include "poslp/polysys.hpp"

#include <cmath>

namespace poslp {

PolySystem PolySystem::zeros(std::size_t n, std::size_t m, std::size_t p, std::size_t q,
                             std::size_t num_params) {
  PolySystem s;
  s.n = n;
  s.m = m;
  s.p = p;
  s.q = q;
  s.A = PolyMatrix(num_params, Mat(n, n));
  s.B = PolyMatrix(num_params, Mat(n, m));
  s.C = PolyMatrix(num_params, Mat(q, n));
  s.D = PolyMatrix(num_params, Mat(q, m));
  s.E = PolyMatrix(num_params, Mat(n, p));
  s.F = PolyMatrix(num_params, Mat(q, p));
  s.domain = BoxDomain::unit(num_params);
  return s;
}

PolySystem PolySystem::from_constant(const PositiveLtiSystem& sys) {
  PolySystem s = zeros(sys.n(), sys.m(), sys.p(), sys.q(), 0);
  const Exponent e0;
  s.A.add_term(e0, sys.A());
  s.B.add_term(e0, sys.B());
  s.C.add_term(e0, sys.C());
  s.D.add_term(e0, sys.D());
  s.E.add_term(e0, sys.E());
  s.F.add_term(e0, sys.F());
  return s;
}

unsigned PolySystem::degree() const {
  return std::max({A.degree(), B.degree(), C.degree(), D.degree(), E.degree(), F.degree()});
}

void PolySystem::validate() const {
  auto shape = [](const PolyMatrix& x, std::size_t r, std::size_t c, const char* name) {
    if (x.zero().rows() != r || x.zero().cols() != c) {
      throw DimensionError(std::string("polynomial matrix ") + name + " has the wrong shape");
    }
  };
  shape(A, n, n, "A");
  shape(B, n, m, "B");
  shape(C, q, n, "C");
  shape(D, q, m, "D");
  shape(E, n, p, "E");
  shape(F, q, p, "F");
  const std::size_t k = num_params();
  for (const PolyMatrix* x : {&A, &B, &C, &D, &E, &F}) {
    if (x->num_params() != k) throw DimensionError("parameter count mismatch in polynomial system");
  }
  domain.validate();
}

PositiveLtiSystem PolySystem::freeze(std::span<const double> delta) const {
  return PositiveLtiSystem(A.eval(delta), B.eval(delta), C.eval(delta), D.eval(delta),
                           E.eval(delta), F.eval(delta));
}

PolySystem transpose(const PolySystem& sys) {
  PolySystem t;
  t.n = sys.n;
  t.m = 0;
  t.p = sys.q;
  t.q = sys.p;
  t.A = poly_transpose(sys.A);
  t.B = PolyMatrix(sys.num_params(), Mat(sys.n, 0));
  t.C = poly_transpose(sys.E);
  t.D = PolyMatrix(sys.num_params(), Mat(sys.p, 0));
  t.E = poly_transpose(sys.C);
  t.F = poly_transpose(sys.F);
  t.domain = sys.domain;
  return t;
}

std::vector<std::vector<double>> box_grid(const BoxDomain& box, std::size_t points,
                                          std::size_t max_total) {
  const std::size_t k = box.num_params();
  std::vector<std::vector<double>> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  points = std::max<std::size_t>(points, 2);
  while (points > 2 && std::pow(static_cast<double>(points), static_cast<double>(k)) >
                           static_cast<double>(max_total)) {
    --points;
  }
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    std::vector<double> pt(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double t = static_cast<double>(idx[i]) / static_cast<double>(points - 1);
      pt[i] = box.lower[i] + t * (box.upper[i] - box.lower[i]);
    }
    out.push_back(std::move(pt));
    std::size_t i = 0;
    while (i < k && ++idx[i] == points) idx[i++] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace poslp
