#include "poslp/models.hpp"

#include <random>

#include "poslp/error.hpp"

namespace poslp {

namespace {

Mat rows(std::initializer_list<std::initializer_list<double>> data) {
  const std::size_t r = data.size();
  const std::size_t c = r ? data.begin()->size() : 0;
  Mat m(r, c);
  std::size_t i = 0;
  for (const auto& row : data) {
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

PositiveLtiSystem drug_model(double a11, double a12, double a21, const Mat& c) {
  if (!(a11 > 0.0 && a12 > 0.0 && a21 > 0.0)) throw DomainError("drug model rates must be positive");
  if (c.cols() != 2) throw DimensionError("drug model output matrix needs two columns");
  const Mat a = rows({{-(a11 + a21), a12}, {a21, -a12}});
  const Mat e = rows({{1.0}, {0.0}});
  return PositiveLtiSystem::without_input(a, c, e, Mat(c.rows(), 1));
}

PolySystem gene_expression_model(double spread) {
  if (!(spread >= 0.0 && spread < 1.0)) throw DomainError("spread must lie in [0, 1)");
  PolySystem s = PolySystem::zeros(2, 0, 1, 1, 3);
  s.domain = BoxDomain{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
  s.A.add_term({0, 0, 0}, rows({{-1.0, 0.0}, {2.0, -1.0}}));
  s.A.add_term({1, 0, 0}, rows({{-spread, 0.0}, {0.0, 0.0}}));
  s.A.add_term({0, 1, 0}, rows({{0.0, 0.0}, {2.0 * spread, 0.0}}));
  s.A.add_term({0, 0, 1}, rows({{0.0, 0.0}, {0.0, -spread}}));
  s.E.add_term({0, 0, 0}, rows({{1.0}, {0.0}}));
  s.C.add_term({0, 0, 0}, rows({{0.0, 1.0}}));
  return s;
}

double gene_expression_worst_gain(double spread) {
  return 2.0 * (1.0 + spread) / ((1.0 - spread) * (1.0 - spread));
}

PolySystem quadratic_uncertain_example() {
  PolySystem s = PolySystem::zeros(3, 0, 2, 2, 1);
  s.A.add_term({0}, rows({{-10, 2, 4}, {3, -8, 1}, {2, 1, -5}}));
  s.A.add_term({1}, rows({{1, 0, 2}, {0, 1, 2}, {-1, 2, -1}}));
  s.A.add_term({2}, rows({{1, -1, -1}, {1, -1, 0}, {0, 1, -1}}));
  s.E.add_term({0}, rows({{1, 3}, {3, 0}, {2, 1}}));
  s.E.add_term({1}, rows({{1, 3}, {1, 1}, {2, 1}}));
  s.E.add_term({2}, rows({{1, 3}, {0, 1}, {1, 4}}));
  s.C.add_term({0}, rows({{1, 3, 1}, {2, 0, 1}}));
  s.C.add_term({1}, rows({{1, 0, 2}, {3, 1, 0}}));
  s.C.add_term({2}, rows({{0, 3, 2}, {1, 4, 1}}));
  s.F.add_term({0}, rows({{2, 1}, {1, 2}}));
  s.F.add_term({1}, rows({{0, 2}, {1, 0}}));
  s.F.add_term({2}, rows({{1, 1}, {2, 1}}));
  return s;
}

LftSystem delay_lft(const Mat& a, const Mat& ah) {
  const std::size_t n = a.rows();
  if (a.cols() != n || ah.rows() != n || ah.cols() != n) {
    throw DimensionError("A and A_h must be square of the same size");
  }
  LftSystem lft;
  lft.A = a;
  lft.E0 = ah;
  lft.E1 = Mat(n, 0);
  lft.C0 = Mat::identity(n);
  lft.C1 = Mat(0, n);
  lft.F00 = Mat(n, n);
  lft.F01 = Mat(n, 0);
  lft.F10 = Mat(0, n);
  lft.F11 = Mat(0, 0);
  lft.delta = PolyMatrix::constant(0, Mat::identity(n));
  lft.domain = BoxDomain::unit(0);
  lft.validate();
  return lft;
}

DelayPair random_delay_pair(std::size_t n, bool stable, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> scale = stable ? std::uniform_real_distribution<double>(1.05, 2.0)
                                                        : std::uniform_real_distribution<double>(0.3, 0.95);
  DelayPair d{Mat(n, n), Mat(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    double reach = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      d.ah(i, j) = u(rng);
      reach += d.ah(i, j);
      if (i != j) {
        d.a(i, j) = u(rng);
        reach += d.a(i, j);
      }
    }
    d.a(i, i) = -scale(rng) * reach;
  }
  return d;
}

}  // namespace poslp
