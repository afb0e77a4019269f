#include "poslp/lft.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "poslp/error.hpp"

namespace poslp {

namespace {

using ExponentSet = std::set<Exponent, MonomialOrder>;

// Highest-index parameter with a positive exponent; alpha must be nonzero.
std::size_t last_param(const Exponent& alpha) {
  for (std::size_t k = alpha.size(); k-- > 0;) {
    if (alpha[k] > 0) return k;
  }
  throw DimensionError("constant monomial has no parent");
}

ExponentSet closure(const ExponentSet& seeds) {
  ExponentSet out;
  for (Exponent a : seeds) {
    while (total_degree(a) > 0) {
      out.insert(a);
      --a[last_param(a)];
    }
  }
  return out;
}

template <class Poly>
void collect(const Poly& p, ExponentSet& out) {
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) > 0) out.insert(e);
  }
}

}  // namespace

ChannelLayout ChannelLayout::build(std::size_t num_params, std::size_t state_dim,
                                   std::size_t input_dim, const ExponentSet& state,
                                   const ExponentSet& input) {
  ChannelLayout layout;
  layout.num_params = num_params;
  layout.state_dim = state_dim;
  layout.input_dim = input_dim;
  for (int side = 0; side < 2; ++side) {
    const bool is_state = side == 0;
    const std::size_t width = is_state ? state_dim : input_dim;
    if (width == 0) continue;
    std::map<Exponent, long> index;
    for (const Exponent& a : closure(is_state ? state : input)) {
      ChannelNode node;
      node.alpha = a;
      node.state_side = is_state;
      node.param = last_param(a);
      Exponent parent = a;
      --parent[node.param];
      node.parent = total_degree(parent) == 0 ? -1 : index.at(parent);
      node.offset = layout.n0;
      node.width = width;
      layout.n0 += width;
      index[a] = static_cast<long>(layout.nodes.size());
      layout.nodes.push_back(std::move(node));
    }
  }
  return layout;
}

Mat ChannelLayout::C0() const {
  Mat c(n0, state_dim);
  for (const ChannelNode& nd : nodes) {
    if (nd.state_side && nd.parent < 0) c.set_block(nd.offset, 0, Mat::identity(nd.width));
  }
  return c;
}

Mat ChannelLayout::F01() const {
  Mat f(n0, input_dim);
  for (const ChannelNode& nd : nodes) {
    if (!nd.state_side && nd.parent < 0) f.set_block(nd.offset, 0, Mat::identity(nd.width));
  }
  return f;
}

Mat ChannelLayout::F00() const {
  Mat f(n0, n0);
  for (const ChannelNode& nd : nodes) {
    if (nd.parent >= 0) {
      f.set_block(nd.offset, nodes[static_cast<std::size_t>(nd.parent)].offset,
                  Mat::identity(nd.width));
    }
  }
  return f;
}

PolyMatrix ChannelLayout::delta() const {
  PolyMatrix d(num_params, Mat(n0, n0));
  for (const ChannelNode& nd : nodes) {
    Exponent e(num_params, 0);
    e[nd.param] = 1;
    Mat block(n0, n0);
    block.set_block(nd.offset, nd.offset, Mat::identity(nd.width));
    d.add_term(e, block);
  }
  return d;
}

void LftSystem::validate() const {
  const std::size_t nx = n();
  const std::size_t k = n0();
  const std::size_t pw = p();
  const std::size_t qz = q();
  auto shape = [](const Mat& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw DimensionError(std::string("LFT block ") + name + " has the wrong shape");
    }
  };
  shape(A, nx, nx, "A");
  shape(E0, nx, k, "E0");
  shape(E1, nx, pw, "E1");
  shape(C0, k, nx, "C0");
  shape(C1, qz, nx, "C1");
  shape(F00, k, k, "F00");
  shape(F01, k, pw, "F01");
  shape(F10, qz, k, "F10");
  shape(F11, qz, pw, "F11");
  if (delta.zero().rows() != k || delta.zero().cols() != k) {
    throw DimensionError("Delta must be n0 x n0");
  }
  if (delta.num_params() != num_params()) throw DimensionError("Delta parameter count mismatch");
  domain.validate();
}

PositiveLtiSystem LftSystem::close_with(const Mat& delta0) const {
  const std::size_t k = n0();
  if (k == 0) return PositiveLtiSystem::without_input(A, C1, E1, F11);
  Mat loop = Mat::identity(k) - delta0 * F00;
  Mat m;
  try {
    m = solve(loop, delta0);
  } catch (const SingularityError& e) {
    throw WellPosednessError(std::string("I - Delta F00 is singular: ") + e.what());
  }
  const Mat mc = m * C0;
  const Mat mf = m * F01;
  return PositiveLtiSystem::without_input(A + E0 * mc, C1 + F10 * mc, E1 + E0 * mf,
                                          F11 + F10 * mf);
}

PositiveLtiSystem LftSystem::close(std::span<const double> point) const {
  return close_with(delta.eval(point));
}

void check_well_posed(const LftSystem& lft, std::size_t points) {
  if (lft.n0() == 0) return;
  for (const auto& pt : box_grid(lft.domain, points)) {
    const Mat loop = Mat::identity(lft.n0()) - lft.delta.eval(pt) * lft.F00;
    try {
      LuDecomposition lu(loop);
    } catch (const SingularityError&) {
      throw WellPosednessError("I - Delta F00 is singular on the uncertainty box");
    }
  }
}

LftSystem lft_from_polynomial(const PolySystem& psys) {
  psys.validate();
  const std::size_t k = psys.num_params();
  ExponentSet state;
  ExponentSet input;
  collect(psys.A, state);
  collect(psys.C, state);
  collect(psys.E, input);
  collect(psys.F, input);
  ChannelLayout layout = ChannelLayout::build(k, psys.n, psys.p, state, input);

  LftSystem lft;
  const Exponent e0(k, 0);
  lft.A = psys.A.coefficient(e0);
  lft.E1 = psys.E.coefficient(e0);
  lft.C1 = psys.C.coefficient(e0);
  lft.F11 = psys.F.coefficient(e0);
  lft.C0 = layout.C0();
  lft.F00 = layout.F00();
  lft.F01 = layout.F01();
  lft.E0 = Mat(psys.n, layout.n0);
  lft.F10 = Mat(psys.q, layout.n0);
  for (const ChannelNode& nd : layout.nodes) {
    if (nd.state_side) {
      lft.E0.set_block(0, nd.offset, psys.A.coefficient(nd.alpha));
      lft.F10.set_block(0, nd.offset, psys.C.coefficient(nd.alpha));
    } else {
      lft.E0.set_block(0, nd.offset, psys.E.coefficient(nd.alpha));
      lft.F10.set_block(0, nd.offset, psys.F.coefficient(nd.alpha));
    }
  }
  lft.delta = layout.delta();
  lft.domain = psys.domain;
  lft.layout = std::move(layout);
  lft.validate();
  check_well_posed(lft);
  return lft;
}

TransposedLft transpose_lft(const PolySystem& psys) {
  return TransposedLft{lft_from_polynomial(transpose(psys))};
}

TransposedLft transpose_lft(const LftSystem& lft) {
  lft.validate();
  LftSystem t;
  t.A = lft.A.transpose();
  t.E0 = lft.C0.transpose();
  t.E1 = lft.C1.transpose();
  t.C0 = lft.E0.transpose();
  t.C1 = lft.E1.transpose();
  t.F00 = lft.F00.transpose();
  t.F01 = lft.F10.transpose();
  t.F10 = lft.F01.transpose();
  t.F11 = lft.F11.transpose();
  t.delta = poly_transpose(lft.delta);
  t.domain = lft.domain;
  return TransposedLft{std::move(t)};
}

double closure_error(const LftSystem& lft, const PolySystem& psys, std::size_t samples,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const std::size_t k = psys.num_params();
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> pt(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_real_distribution<double> u(psys.domain.lower[i], psys.domain.upper[i]);
      pt[i] = u(rng);
    }
    const PositiveLtiSystem closed = lft.close(pt);
    const PositiveLtiSystem frozen = psys.freeze(pt);
    worst = std::max({worst, max_abs_diff(closed.A(), frozen.A()),
                      max_abs_diff(closed.C(), frozen.C()), max_abs_diff(closed.E(), frozen.E()),
                      max_abs_diff(closed.F(), frozen.F())});
  }
  return worst;
}

}  // namespace poslp
