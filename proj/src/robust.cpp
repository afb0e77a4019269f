#include "poslp/robust.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "poslp/error.hpp"

namespace poslp {

namespace {

using ExponentSet = std::set<Exponent, MonomialOrder>;

// Constant data of the L1 inequalities of an LFT; the *_forms carry the
// variable-dependent parts over the leading variables.
struct L1Blocks {
  std::vector<Vec> a_forms;   // n forms: column j of A against lambda
  std::vector<Vec> e0_forms;  // n0 forms
  std::vector<Vec> e1_forms;  // p forms
  Mat C0, C1, F00, F01, F10, F11;
  PolyMatrix delta;
};

Vec widen(const Vec& v, std::size_t width) {
  std::vector<double> out(v.begin(), v.end());
  out.resize(width, 0.0);
  return Vec(std::move(out));
}

void add_lambda_gamma(RobustLinearProgram& rlp, std::size_t n, const StrictnessPolicy& policy) {
  for (std::size_t i = 0; i < n; ++i) {
    rlp.add_var("lambda[" + std::to_string(i) + "]", policy.lambda_floor);
  }
  rlp.add_var("gamma", 0.0);
  rlp.objective[n] = 1.0;
}

// Appends the scaling variables and every row of the robust L1 program.
// Leading variables must already be in place; gamma sits at index n.
void assemble_l1(RobustProgram& prog, const L1Blocks& b, const ScalingTemplate& scaling) {
  RobustLinearProgram& rlp = prog.rlp;
  const std::size_t n = prog.n;
  const std::size_t np = rlp.domain.num_params();
  const ScalingConstraintSet s = instantiate(scaling, b.delta);
  const std::size_t n0 = s.n0;
  prog.scaling_offset = rlp.num_vars;
  const std::size_t off = prog.scaling_offset;
  for (std::size_t v = 0; v < s.num_vars(); ++v) {
    const bool nonneg = std::find(s.nonnegative_vars.begin(), s.nonnegative_vars.end(), v) !=
                        s.nonnegative_vars.end();
    rlp.add_var(s.var_name(v), nonneg ? 0.0 : -kInf);
  }
  const std::size_t width = rlp.num_vars + 1;
  const Exponent e0(np, 0);

  auto base = [&](const Vec& lead, double constant) {
    Vec v = widen(lead, width);
    v[width - 1] = constant;
    PolyVec form(np, Vec(width));
    form.add_term(e0, v);
    return form;
  };
  auto unit = [&](std::size_t var, double w) {
    Vec v(width);
    v[var] = w;
    return v;
  };
  auto add_phi1 = [&](PolyVec& form, std::size_t c, double w) {
    if (w == 0.0) return;
    for (std::size_t k = 0; k < s.phi1_monomials.size(); ++k) {
      form.add_term(s.phi1_monomials[k], unit(off + s.phi1_index(c, k), w));
    }
  };

  const Vec c1sum = b.C1.col_sums();
  for (std::size_t j = 0; j < n; ++j) {
    PolyVec form = base(b.a_forms[j], c1sum[j]);
    for (std::size_t c = 0; c < n0; ++c) add_phi1(form, c, b.C0(c, j));
    rlp.add_row(std::move(form), StrictSense::kNegative);
  }
  const Vec f10sum = b.F10.col_sums();
  for (std::size_t c = 0; c < n0; ++c) {
    PolyVec form = base(b.e0_forms[c], f10sum[c]);
    for (std::size_t k = 0; k < s.phi2_monomials.size(); ++k) {
      form.add_term(s.phi2_monomials[k], unit(off + s.phi2_index(c, k), 1.0));
    }
    for (std::size_t r = 0; r < n0; ++r) add_phi1(form, r, b.F00(r, c));
    rlp.add_row(std::move(form), StrictSense::kNegative);
  }
  const Vec f11sum = b.F11.col_sums();
  for (std::size_t j = 0; j < b.e1_forms.size(); ++j) {
    Vec lead = widen(b.e1_forms[j], width - 1);
    lead[n] = -1.0;
    PolyVec form = base(lead, f11sum[j]);
    for (std::size_t c = 0; c < n0; ++c) add_phi1(form, c, b.F01(c, j));
    rlp.add_row(std::move(form), StrictSense::kNegative);
  }

  auto to_global = [&](const Vec& local) {
    Vec v(width);
    for (std::size_t i = 0; i + 1 < local.size(); ++i) v[off + i] = local[i];
    v[width - 1] = local[local.size() - 1];
    return v;
  };
  for (const Vec& eq : s.equalities) {
    PolyVec form(np, Vec(width));
    form.add_term(e0, to_global(eq));
    rlp.add_row(std::move(form), StrictSense::kZero);
  }
  for (const PolyVec& p : s.nonnegative) {
    PolyVec form(np, Vec(width));
    for (const auto& [e, c] : p.terms()) form.add_term(e, to_global(c) * -1.0);
    rlp.add_row(std::move(form), StrictSense::kNonPositive);
  }
  prog.scalings = s;
}

L1Blocks lft_blocks(const LftSystem& lft) {
  const std::size_t n = lft.n();
  L1Blocks b;
  auto column_form = [&](const Mat& m, std::size_t j) {
    Vec v(n + 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = m(i, j);
    return v;
  };
  for (std::size_t j = 0; j < n; ++j) b.a_forms.push_back(column_form(lft.A, j));
  for (std::size_t c = 0; c < lft.n0(); ++c) b.e0_forms.push_back(column_form(lft.E0, c));
  for (std::size_t j = 0; j < lft.p(); ++j) b.e1_forms.push_back(column_form(lft.E1, j));
  b.C0 = lft.C0;
  b.C1 = lft.C1;
  b.F00 = lft.F00;
  b.F01 = lft.F01;
  b.F10 = lft.F10;
  b.F11 = lft.F11;
  b.delta = lft.delta;
  return b;
}

template <class P>
void collect(const P& p, ExponentSet& out) {
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) > 0) out.insert(e);
  }
}

bool nonnegative_on_grid(const PolyMatrix& m, const BoxDomain& box) {
  for (const auto& pt : box_grid(box, 11)) {
    if (!is_nonnegative(m.eval(pt))) return false;
  }
  return true;
}

// Metzler A is Hurwitz exactly when A is nonsingular with -A^{-1} >= 0.
bool hurwitz_by_inverse(const Mat& a) {
  if (!is_metzler(a)) return false;
  try {
    const Mat inv = LuDecomposition(a).inverse();
    const double scale = std::max(1.0, inv.max_abs());
    for (std::size_t i = 0; i < inv.rows(); ++i) {
      for (std::size_t j = 0; j < inv.cols(); ++j) {
        if (-inv(i, j) < -1e-10 * scale) return false;
      }
    }
    return true;
  } catch (const SingularityError&) {
    return false;
  }
}

// L1 gain of a stable positive system: the largest column sum of its static gain.
double l1_oracle(const PositiveLtiSystem& sys) {
  const Mat h = sys.F() - sys.C() * solve(sys.A(), sys.E());
  double g = 0.0;
  const Vec cs = h.col_sums();
  for (std::size_t j = 0; j < cs.size(); ++j) g = std::max(g, cs[j]);
  return g;
}

std::string point_label(const std::vector<double>& pt) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? ", " : "") << pt[i];
  os << ")";
  return os.str();
}

}  // namespace

RobustProgram robust_l1(const LftSystem& lft, const ScalingTemplate& scaling,
                        const StrictnessPolicy& policy) {
  policy.validate();
  lft.validate();
  RobustProgram prog;
  prog.n = lft.n();
  prog.rlp.domain = lft.domain;
  prog.rlp.policy = policy;
  add_lambda_gamma(prog.rlp, prog.n, policy);
  assemble_l1(prog, lft_blocks(lft), scaling);
  return prog;
}

RobustProgram robust_linf(const TransposedLft& tlft, const ScalingTemplate& scaling,
                          const StrictnessPolicy& policy) {
  return robust_l1(tlft.lft, scaling, policy);
}

RobustProgram robust_stabilize(const PolySystem& psys, const ScalingTemplate& scaling,
                               const ControllerSpec& spec, const StrictnessPolicy& policy) {
  policy.validate();
  psys.validate();
  const std::size_t n = psys.n;
  const std::size_t m = psys.m;
  const std::size_t p = psys.p;
  const std::size_t q = psys.q;
  if (m == 0) throw ModelError("synthesis needs the input matrices B and D");
  spec.validate(m, n);
  if (!nonnegative_on_grid(psys.E, psys.domain) || !nonnegative_on_grid(psys.F, psys.domain)) {
    throw ClassificationError("synthesis requires E(delta) and F(delta) nonnegative on the box");
  }
  const std::size_t np = psys.num_params();
  const Exponent e0(np, 0);

  RobustProgram prog;
  prog.n = n;
  prog.m = m;
  RobustLinearProgram& rlp = prog.rlp;
  rlp.domain = psys.domain;
  rlp.policy = policy;
  add_lambda_gamma(rlp, n, policy);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < m; ++r) {
      rlp.add_var("mu[" + std::to_string(j) + "][" + std::to_string(r) + "]");
    }
  }
  const std::size_t lead = rlp.num_vars;

  // Row i of X lambda + Y sum(mu), for the coefficient pair (X, Y).
  auto form = [&](const Mat& x, const Mat& y, std::size_t i) {
    Vec v(lead);
    for (std::size_t j = 0; j < n; ++j) {
      v[j] = x(i, j);
      for (std::size_t r = 0; r < m; ++r) v[mu_index(n, m, j, r)] = y(i, r);
    }
    return v;
  };

  ExponentSet state;
  ExponentSet input;
  collect(psys.A, state);
  collect(psys.B, state);
  collect(psys.E, state);
  collect(psys.C, input);
  collect(psys.D, input);
  collect(psys.F, input);
  const ChannelLayout layout = ChannelLayout::build(np, n, q, state, input);

  L1Blocks b;
  const Mat a0 = psys.A.coefficient(e0);
  const Mat b0 = psys.B.coefficient(e0);
  const Mat c0 = psys.C.coefficient(e0);
  const Mat d0 = psys.D.coefficient(e0);
  for (std::size_t i = 0; i < n; ++i) b.a_forms.push_back(form(a0, b0, i));
  for (const ChannelNode& nd : layout.nodes) {
    const Mat x = nd.state_side ? psys.A.coefficient(nd.alpha) : psys.C.coefficient(nd.alpha);
    const Mat y = nd.state_side ? psys.B.coefficient(nd.alpha) : psys.D.coefficient(nd.alpha);
    for (std::size_t i = 0; i < nd.width; ++i) b.e0_forms.push_back(form(x, y, i));
  }
  for (std::size_t i = 0; i < q; ++i) b.e1_forms.push_back(form(c0, d0, i));
  b.C0 = layout.C0();
  b.F00 = layout.F00();
  b.F01 = layout.F01();
  b.C1 = psys.E.coefficient(e0).transpose();
  b.F11 = psys.F.coefficient(e0).transpose();
  b.F10 = Mat(p, layout.n0);
  for (const ChannelNode& nd : layout.nodes) {
    const Mat blk = nd.state_side ? psys.E.coefficient(nd.alpha) : psys.F.coefficient(nd.alpha);
    b.F10.set_block(0, nd.offset, blk.transpose());
  }
  b.delta = poly_transpose(layout.delta());
  assemble_l1(prog, b, scaling);

  const std::size_t width = rlp.num_vars + 1;
  // -(X(delta)_ij lambda_j + Y(delta)_i mu_j) <= 0 for the pair (X, Y).
  auto sign_row = [&](const PolyMatrix& x, const PolyMatrix& y, std::size_t i, std::size_t j) {
    ExponentSet mons;
    for (const auto& [e, c] : x.terms()) mons.insert(e);
    for (const auto& [e, c] : y.terms()) mons.insert(e);
    mons.insert(e0);
    PolyVec f(np, Vec(width));
    for (const Exponent& e : mons) {
      const Mat xe = x.coefficient(e);
      const Mat ye = y.coefficient(e);
      Vec v(width);
      v[j] = 0.0 - xe(i, j);
      for (std::size_t r = 0; r < m; ++r) v[mu_index(n, m, j, r)] = 0.0 - ye(i, r);
      f.add_term(e, v);
    }
    rlp.add_row(std::move(f), StrictSense::kNonPositive);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sign_row(psys.A, psys.B, i, j);
    }
  }
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < n; ++j) sign_row(psys.C, psys.D, i, j);
  }
  auto constant = [&](Vec v) { rlp.add_constant_row(v, 0.0, StrictSense::kNonPositive); };
  for (const auto& [r, j] : spec.zero_pattern) {
    Vec v(width - 1);
    v[mu_index(n, m, j, r)] = 1.0;
    rlp.add_constant_row(v, 0.0, StrictSense::kZero);
  }
  if (spec.has_bounds()) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < m; ++r) {
        Vec lo(width - 1);
        lo[j] = spec.k_lower(r, j);
        lo[mu_index(n, m, j, r)] = -1.0;
        constant(std::move(lo));
        Vec up(width - 1);
        up[j] = 0.0 - spec.k_upper(r, j);
        up[mu_index(n, m, j, r)] = 1.0;
        constant(std::move(up));
      }
    }
  }
  return prog;
}

RobustSolveResult solve_robust(const RobustProgram& prog, const RelaxationOptions& opts) {
  const RobustLinearProgram& rlp = prog.rlp;
  rlp.validate();
  RobustSolveResult res;
  res.handelman_degree = opts.degree ? opts.degree : rlp.degree() + 2;
  if (res.handelman_degree < rlp.degree()) {
    throw DegreeError("Handelman degree is below the degree of the robust program");
  }
  HandelmanBasis basis{rlp.domain, res.handelman_degree};
  res.relaxed = opts.form == RelaxationForm::kFull ? relax_full(rlp, basis)
                                                   : relax_reduced(rlp, basis);
  res.solution = solve_lp(res.relaxed.lp);
  res.status = res.solution.status;
  if (!res.feasible()) return res;
  res.x = Vec(rlp.num_vars);
  for (std::size_t i = 0; i < rlp.num_vars; ++i) res.x[i] = res.solution.x[i];
  res.gamma = res.x[prog.gamma_index()];
  res.lambda = Vec(prog.n);
  for (std::size_t i = 0; i < prog.n; ++i) res.lambda[i] = res.x[i];
  res.certificate = extract_certificate(res.relaxed, res.solution.x);
  return res;
}

SynthesisResult robust_controller(const RobustProgram& prog, const RobustSolveResult& res) {
  if (!res.feasible()) throw InfeasibleError("robust synthesis program is infeasible");
  SynthesisResult out = recover_controller(res.x, prog.n, prog.m);
  out.lp = res.relaxed.lp;
  out.solution = res.solution;
  return out;
}

ExactGainResult exact_constant_delta(const LftSystem& lft, const Mat& delta0,
                                     const StrictnessPolicy& policy) {
  lft.validate();
  if (lft.n0() > 0) {
    try {
      LuDecomposition lu(Mat::identity(lft.n0()) - delta0 * lft.F00);
    } catch (const SingularityError&) {
      throw WellPosednessError("I - Delta0 F00 is singular");
    }
  }
  const RobustProgram prog = robust_l1(lft, SaturatedStaticGain{delta0}, policy);
  ExactGainResult res;
  res.lp = to_linear_program(prog.rlp);
  res.solution = solve_lp(res.lp);
  res.feasible = res.solution.status == LpStatus::kOptimal;
  if (res.feasible) {
    res.gamma = res.solution.x[prog.gamma_index()];
    res.lambda = Vec(prog.n);
    for (std::size_t i = 0; i < prog.n; ++i) res.lambda[i] = res.solution.x[i];
  }
  return res;
}

const char* to_string(GainNorm norm) { return norm == GainNorm::kL1 ? "l1" : "linf"; }

VertexGainResult vertex_gain(const PolySystem& psys, GainNorm norm,
                             const StrictnessPolicy& policy) {
  psys.validate();
  const std::size_t k = psys.num_params();
  if (k > 20) throw CombinatorialError("vertex enumeration is limited to 20 parameters");
  for (const PolyMatrix* m : {&psys.A, &psys.C, &psys.E, &psys.F}) {
    if (m->degree() > 1) throw DegreeError("vertex gains need dependence affine in delta");
  }
  VertexGainResult res;
  res.num_vertices = std::size_t{1} << k;
  std::vector<double> pt(k);
  for (std::size_t v = 0; v < res.num_vertices; ++v) {
    for (std::size_t i = 0; i < k; ++i) {
      pt[i] = (v >> i) & 1u ? psys.domain.upper[i] : psys.domain.lower[i];
    }
    PositiveLtiSystem sys = psys.freeze(pt);
    if (!sys.is_positive()) {
      throw ClassificationError("system is not positive at the vertex " + point_label(pt));
    }
    if (norm == GainNorm::kLinf) sys = transpose_system(sys);
    LinearProgram part = l1_gain_program(sys.A(), sys.C(), sys.E(), sys.F(), policy);
    if (v == 0) {
      res.lp = std::move(part);
    } else {
      for (LpRow& r : part.rows) res.lp.rows.push_back(std::move(r));
    }
  }
  GainResult g = solve_gain_program(std::move(res.lp), psys.n);
  res.gamma = g.gamma;
  res.lambda = std::move(g.lambda);
  res.lp = std::move(g.lp);
  res.solution = std::move(g.solution);
  return res;
}

const char* to_string(GridStatus status) {
  switch (status) {
    case GridStatus::kConsistent: return "consistent";
    case GridStatus::kRefuted: return "refuted";
    case GridStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t effective_grid_points(std::size_t num_params, std::size_t points) {
  if (num_params == 0) return 1;
  points = std::max<std::size_t>(points, 2);
  while (points > 2 && std::pow(static_cast<double>(points), static_cast<double>(num_params)) >
                           1e6) {
    --points;
  }
  return points;
}

namespace {

// Shared sweep: `frozen` maps a grid point to the system whose L1 gain is checked.
template <class Frozen>
GridVerdict sweep_gain(const BoxDomain& box, double gamma, std::size_t points, Frozen frozen) {
  GridVerdict v;
  const double bound = gamma * (1.0 + 1e-6) + 1e-6;
  for (const auto& pt : box_grid(box, points)) {
    ++v.points;
    const PositiveLtiSystem sys = frozen(pt);
    if (!classify(sys, 1e-9).is_positive) {
      v.status = GridStatus::kInconclusive;
      v.detail = "frozen system is not positive at " + point_label(pt);
      v.worst_point = pt;
      return v;
    }
    if (!hurwitz_by_inverse(sys.A())) {
      v.status = GridStatus::kRefuted;
      v.detail = "frozen system is unstable at " + point_label(pt);
      v.worst_point = pt;
      return v;
    }
    const double g = l1_oracle(sys);
    if (g >= v.worst_gain) {
      v.worst_gain = g;
      v.worst_point = pt;
    }
  }
  if (v.worst_gain > bound) {
    v.status = GridStatus::kRefuted;
    std::ostringstream os;
    os << "gain " << v.worst_gain << " at " << point_label(v.worst_point) << " exceeds " << gamma;
    v.detail = os.str();
  }
  return v;
}

}  // namespace

GridVerdict certify_gain_on_grid(const LftSystem& lft, double gamma, std::size_t points) {
  return sweep_gain(lft.domain, gamma, points, [&](const auto& pt) { return lft.close(pt); });
}

GridVerdict certify_gain_on_grid(const PolySystem& psys, GainNorm norm, double gamma,
                                 std::size_t points) {
  return sweep_gain(psys.domain, gamma, points, [&](const auto& pt) {
    PositiveLtiSystem s = psys.freeze(pt);
    return norm == GainNorm::kLinf ? transpose_system(s) : s;
  });
}

GridVerdict certify_controller_on_grid(const PolySystem& psys, const Mat& k, double gamma,
                                       std::size_t points) {
  GridVerdict v;
  const double bound = gamma * (1.0 + 1e-6) + 1e-6;
  for (const auto& pt : box_grid(psys.domain, points)) {
    ++v.points;
    const PositiveLtiSystem open(psys.A.eval(pt), psys.B.eval(pt), psys.C.eval(pt),
                                 psys.D.eval(pt), psys.E.eval(pt), psys.F.eval(pt));
    if (!closed_loop_positive(open, k, 1e-9)) {
      v.status = GridStatus::kRefuted;
      v.detail = "closed loop is not positive at " + point_label(pt);
      v.worst_point = pt;
      return v;
    }
    const Mat acl = open.A() + open.B() * k;
    const Mat ccl = open.C() + open.D() * k;
    Mat acl_clean = acl;
    Mat ccl_clean = ccl;
    for (std::size_t i = 0; i < acl.rows(); ++i) {
      for (std::size_t j = 0; j < acl.cols(); ++j) {
        if (i != j) acl_clean(i, j) = std::max(0.0, acl(i, j));
      }
    }
    for (std::size_t i = 0; i < ccl.rows(); ++i) {
      for (std::size_t j = 0; j < ccl.cols(); ++j) ccl_clean(i, j) = std::max(0.0, ccl(i, j));
    }
    if (!hurwitz_by_inverse(acl_clean)) {
      v.status = GridStatus::kRefuted;
      v.detail = "closed loop is unstable at " + point_label(pt);
      v.worst_point = pt;
      return v;
    }
    const PositiveLtiSystem cl = PositiveLtiSystem::without_input(acl_clean, ccl_clean,
                                                                  open.E(), open.F());
    const double g = l1_oracle(transpose_system(cl));
    if (g >= v.worst_gain) {
      v.worst_gain = g;
      v.worst_point = pt;
    }
  }
  if (v.worst_gain > bound) {
    v.status = GridStatus::kRefuted;
    std::ostringstream os;
    os << "gain " << v.worst_gain << " at " << point_label(v.worst_point) << " exceeds " << gamma;
    v.detail = os.str();
  }
  return v;
}

}  // namespace poslp
