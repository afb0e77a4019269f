// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "poslp/error.hpp"
#include "poslp/gains.hpp"
#include "poslp/handelman.hpp"
#include "poslp/models.hpp"
#include "poslp/robust.hpp"
#include "poslp/synthesis.hpp"

using namespace poslp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<PositiveLtiSystem> battery() {
  std::vector<PositiveLtiSystem> out;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> n(2, 20), pq(1, 5);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const std::size_t nn = n(rng), p = pq(rng), q = pq(rng);
    out.push_back(random_positive_system(nn, 0, p, q, 1000 + k));
  }
  return out;
}

void oracle_equivalence(Outcome& o) {
  double worst1 = 0.0, worst_inf = 0.0;
  for (const PositiveLtiSystem& s : battery()) {
    const Mat h = oracle::static_gain(s.A(), s.C(), s.E(), s.F());
    worst1 = std::max(worst1, rel(l1_gain(s).gamma, oracle::max_col_sum(h)));
    worst_inf = std::max(worst_inf, rel(linf_gain(s).gamma, oracle::max_row_sum(h)));
  }
  o.require(worst1 <= 1e-4 && worst_inf <= 1e-4, "relative gap above 1e-4");
  o.detail << "200 systems, worst relative gap l1 " << worst1 << ", linf " << worst_inf;
}

void transposition(Outcome& o) {
  double worst = 0.0;
  for (const PositiveLtiSystem& s : battery()) {
    worst = std::max(worst, std::abs(linf_gain(s).gamma - l1_gain(transpose_system(s)).gamma));
  }
  o.require(worst <= 1e-9, "difference above 1e-9");
  o.detail << "200 systems, worst |linf - l1(transpose)| " << worst;
}

void drug_model_table(Outcome& o) {
  const StrictnessPolicy pol{1e-9, 1e-9};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.1, 10.0), weight(0.1, 5.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const double a11 = rate(rng), a12 = rate(rng), a21 = rate(rng);
    const double k1 = weight(rng), k2 = weight(rng);
    const double t1 = 1.0 / a11, t2 = a21 / (a11 * a12);
    struct Case {
      Mat c;
      double l1, linf;
    };
    const Case cases[] = {{Mat{{1, 0}}, t1, t1},
                          {Mat{{0, 1}}, t2, t2},
                          {Mat{{k1, 0}, {0, k2}}, k1 * t1 + k2 * t2, std::max(k1 * t1, k2 * t2)}};
    for (const Case& c : cases) {
      const PositiveLtiSystem s = drug_model(a11, a12, a21, c.c);
      worst = std::max({worst, rel(l1_gain(s, pol).gamma, c.l1), rel(linf_gain(s, pol).gamma, c.linf)});
    }
  }
  o.require(worst <= 1e-6, "relative gap above 1e-6");
  o.detail << "50 rate triples x 3 outputs, worst relative gap " << worst << " (epsilon 1e-9)";
}

void gene_expression_table(Outcome& o) {
  const double spreads[] = {0.0, 0.1, 0.3, 0.5, 0.7};
  const double published[] = {2.0, 2.7162, 5.3063, 12.0003, 37.7783};
  for (int i = 0; i < 5; ++i) {
    const double g = vertex_gain(gene_expression_model(spreads[i]), GainNorm::kLinf).gamma;
    o.require(rel(g, published[i]) <= 1e-3, "N = " + std::to_string(spreads[i]));
    o.detail << "N=" << spreads[i] << ": " << g << (i < 4 ? ", " : "");
  }
}

double exact_sweep(const PolySystem& p, bool l1) {
  double best = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const std::vector<double> pt{k / 1000.0};
    const PositiveLtiSystem s = p.freeze(pt);
    const Mat h = oracle::static_gain(s.A(), s.C(), s.E(), s.F());
    best = std::max(best, l1 ? oracle::max_col_sum(h) : oracle::max_row_sum(h));
  }
  return best;
}

void polynomial_tables(Outcome& o) {
  const PolySystem p = quadratic_uncertain_example();
  const LftSystem l1 = lft_from_polynomial(p);
  const TransposedLft linf = transpose_lft(p);
  auto bound = [](const RobustProgram& prog) {
    return solve_robust(prog, RelaxationOptions{RelaxationForm::kReduced, std::max(1u, prog.rlp.degree())}).gamma;
  };
  const double c1 = bound(robust_l1(l1, FreeConstant{}));
  const double s1 = bound(robust_l1(l1, FreePolynomial{2, true}));
  const double ci = bound(robust_linf(linf, FreeConstant{}));
  const double si = bound(robust_linf(linf, FreePolynomial{2, true}));
  o.require(rel(c1, 133.95) <= 0.005, "L1 constant scalings");
  o.require(rel(s1, 94.167) <= 0.005, "L1 degree-2 scalings");
  o.require(rel(ci, 86.195) <= 0.005, "Linf constant scalings");
  o.require(rel(si, 82.025) <= 0.005, "Linf degree-2 scalings");
  const double e1 = exact_sweep(p, true), ei = exact_sweep(p, false);
  o.require(std::abs(e1 - 92.8358) <= 1e-3, "exact L1 sweep");
  o.require(std::abs(ei - 82.0249) <= 1e-3, "exact Linf sweep");
  o.detail << "L1 " << c1 << " / " << s1 << ", Linf " << ci << " / " << si << ", sweep max " << e1 << " / " << ei;
}

void delay_exactness(Outcome& o) {
  int agree = 0, stable = 0;
  for (int k = 0; k < 100; ++k) {
    const bool want_stable = k < 50;
    const DelayPair d = random_delay_pair(2 + k % 7, want_stable, 5000 + k);
    const bool exact = exact_constant_delta(delay_lft(d.a, d.ah), Mat::identity(d.a.rows())).feasible;
    const bool direct = is_stable(d.a + d.ah);
    agree += exact == direct;
    stable += direct;
  }
  o.require(agree == 100, "verdict mismatch");
  o.require(stable == 50, "generator did not split the pairs evenly");
  o.detail << agree << "/100 verdicts agree, " << stable << " stable";
}

PositiveLtiSystem synthesis_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  const std::size_t n = dim(rng);
  const std::size_t m = 1 + rng() % n;
  Mat a = oracle::random_matrix(rng, n, n, -1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  Mat b(n, m);
  for (std::size_t i = 0; i < n; ++i) b(i, i % m) = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
  return PositiveLtiSystem(a, b, oracle::random_matrix(rng, 2, n, 0.0, 1.0), oracle::random_matrix(rng, 2, m, 0.0, 0.2),
                           oracle::random_matrix(rng, n, 2, 0.0, 1.0), oracle::random_matrix(rng, 2, 2, 0.0, 1.0));
}

// Independent closed-loop check of one synthesized gain.
bool certified(const PositiveLtiSystem& s, const SynthesisResult& r, std::string& why) {
  // Sign pattern of A + BK and C + DK, relative to the size of the terms.
  double worst = 0.0;
  auto scan = [&](const Mat& x, const Mat& y, bool skip_diag) {
    const Mat yk = oracle::mul(y, r.K);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (skip_diag && i == j) continue;
        double mag = std::abs(x(i, j));
        for (std::size_t k = 0; k < y.cols(); ++k) mag += std::abs(y(i, k) * r.K(k, j));
        worst = std::max(worst, -(x(i, j) + yk(i, j)) / (1.0 + mag));
      }
    }
  };
  scan(s.A(), s.B(), true);
  scan(s.C(), s.D(), false);
  if (worst > 1e-9) {
    why = "closed loop not positive (relative violation " + std::to_string(worst) + ")";
    return false;
  }
  const PositiveLtiSystem cl = closed_loop(s, r.K);
  Mat a = cl.A(), c = cl.C();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) a(i, j) = std::max(a(i, j), 0.0);
    }
  }
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = std::max(c(i, j), 0.0);
  }
  if (!oracle::metzler_hurwitz(a)) {
    why = "closed loop not Hurwitz";
    return false;
  }
  const double g = oracle::max_row_sum(oracle::static_gain(a, c, cl.E(), cl.F()));
  if (g > r.gamma * (1 + 1e-6) + 1e-6) {
    why = "closed-loop gain above gamma";
    return false;
  }
  return true;
}

void synthesis_certification(Outcome& o) {
  std::mt19937_64 rng(99);
  int done = 0, tried = 0, structured = 0, bounded = 0;
  while (done < 50 && tried < 1000) {
    ++tried;
    const PositiveLtiSystem s = synthesis_instance(rng);
    SynthesisResult full;
    try {
      full = stabilize_linf(s);
    } catch (const InfeasibleError&) {
      continue;
    }
    ++done;
    std::string why;
    const bool ok = certified(s, full, why);
    o.require(ok, "full gain set: " + why);

    // Zero pattern: every other entry of the first row.
    std::vector<std::pair<std::size_t, std::size_t>> zeros;
    for (std::size_t j = 0; j < s.n(); j += 2) zeros.emplace_back(0, j);
    try {
      const SynthesisResult r = stabilize_linf(s, ControllerSpec::structured(zeros));
      ++structured;
      const bool ok = certified(s, r, why);
      o.require(ok, "structured: " + why);
      for (const auto& [i, j] : zeros) o.require(r.K(i, j) == 0.0, "structured zero not exact");
    } catch (const InfeasibleError&) {
    }

    // Box around the unconstrained gain, loose enough to stay feasible.
    const double w = full.K.max_abs() + 1.0;
    const Mat lo(s.m(), s.n(), -w), hi(s.m(), s.n(), w);
    try {
      const SynthesisResult r = stabilize_linf(s, ControllerSpec::bounded(lo, hi));
      ++bounded;
      const bool ok = certified(s, r, why);
      o.require(ok, "bounded: " + why);
      for (std::size_t i = 0; i < s.m(); ++i) {
        for (std::size_t j = 0; j < s.n(); ++j) {
          o.require(r.K(i, j) >= -w - 1e-9 && r.K(i, j) <= w + 1e-9, "bound violated");
        }
      }
    } catch (const InfeasibleError&) {
      o.require(false, "bounded problem infeasible although the free gain fits");
    }
  }
  o.require(done == 50, "not enough synthesizable instances");
  o.detail << done << " instances (" << tried << " drawn), " << structured << " structured, " << bounded
           << " bounded";
}

void handelman_regression(Outcome& o) {
  const HandelmanBasis basis{BoxDomain{{-1.0}, {1.0}}, 2};
  const std::vector<Exponent> products = enumerate_products(basis);
  const Mat u = build_upsilon(basis, products);
  const std::vector<Exponent> tau = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  const double chi[3][5] = {{1, 1, 1, 1, 1}, {1, -1, 0, 2, -2}, {0, 0, -1, 1, 1}};
  for (std::size_t t = 0; t < tau.size(); ++t) {
    std::size_t col = 0;
    while (products[col] != tau[t]) ++col;
    for (std::size_t r = 0; r < 3; ++r) o.require(u(r, col) == chi[r][t], "upsilon entry");
  }
  o.require(u.rows() == 3 && u.cols() == 6, "upsilon shape");

  const PolySystem p = quadratic_uncertain_example();
  const LftSystem l1 = lft_from_polynomial(p);
  const LftSystem linf = transpose_lft(p).lft;
  int programs = 0;
  double worst = 0.0;
  for (const LftSystem* lft : {&l1, &linf}) {
    for (const ScalingTemplate& tpl : {ScalingTemplate{FreeConstant{}}, ScalingTemplate{FreePolynomial{1, true}},
                                       ScalingTemplate{FreePolynomial{2, true}}, ScalingTemplate{FreePolynomial{1, false}}}) {
      const RobustProgram prog = robust_l1(*lft, tpl);
      const unsigned d = std::max(1u, prog.rlp.degree());
      double prev = kInf;
      for (unsigned b = d; b <= d + 2; ++b) {
        const RobustSolveResult f = solve_robust(prog, {RelaxationForm::kFull, b});
        const RobustSolveResult r = solve_robust(prog, {RelaxationForm::kReduced, b});
        ++programs;
        o.require(f.feasible() == r.feasible(), "feasibility differs between forms");
        if (!f.feasible()) continue;
        const double gap = rel(r.gamma, f.gamma);
        worst = std::max(worst, gap);
        o.require(gap <= 1e-7, "forms disagree on gamma");
        o.require(f.gamma <= prev + 1e-9, "gamma increased with the degree");
        prev = f.gamma;
      }
    }
  }
  o.detail << "upsilon matches (7 entries x 5 products), " << programs
           << " relaxations, worst full/reduced gap " << worst;
}

void reduction_consistency(Outcome& o) {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PositiveLtiSystem s = random_positive_system(2 + seed % 6, 1 + seed % 3, 1 + seed % 4, 1 + seed % 2, seed);
    const PolySystem ps = PolySystem::from_constant(s);
    const PositiveLtiSystem t = transpose_system(s);
    const StrictnessPolicy pol;
    const std::uint64_t l1 = lp_fingerprint(l1_gain_program(s.A(), s.C(), s.E(), s.F(), pol));
    const std::uint64_t linf = lp_fingerprint(l1_gain_program(t.A(), t.C(), t.E(), t.F(), pol));

    const RobustProgram rl1 = robust_l1(lft_from_polynomial(ps), FreeConstant{}, pol);
    const RobustProgram rlinf = robust_linf(transpose_lft(ps), FreeConstant{}, pol);
    o.require(lp_fingerprint(to_linear_program(rl1.rlp)) == l1, "robust l1");
    o.require(lp_fingerprint(solve_robust(rl1).relaxed.lp) == l1, "relaxed robust l1");
    o.require(lp_fingerprint(to_linear_program(rlinf.rlp)) == linf, "robust linf");
    o.require(lp_fingerprint(vertex_gain(ps, GainNorm::kL1, pol).lp) == l1, "vertex l1");
    o.require(lp_fingerprint(vertex_gain(ps, GainNorm::kLinf, pol).lp) == linf, "vertex linf");
    compared += 5;

    std::vector<ControllerSpec> specs = {ControllerSpec::full(), ControllerSpec::structured({{0, 0}}),
                                         ControllerSpec::bounded(Mat(s.m(), s.n(), -2.0), Mat(s.m(), s.n(), 2.0))};
    for (const ControllerSpec& spec : specs) {
      const RobustProgram rs = robust_stabilize(ps, FreeConstant{}, spec, pol);
      const std::uint64_t nominal = lp_fingerprint(synthesis_program(s, spec, pol));
      o.require(lp_fingerprint(to_linear_program(rs.rlp)) == nominal, "robust synthesis");
      o.require(lp_fingerprint(solve_robust(rs).relaxed.lp) == nominal, "relaxed robust synthesis");
      compared += 2;
    }
  }
  o.detail << compared << " program pairs hash-identical";
}

PolySystem scalar_example() {
  PolySystem s = PolySystem::zeros(1, 1, 1, 1, 1);
  s.A.add_term({0}, Mat{{1}});
  s.A.add_term({1}, Mat{{1}});
  s.B.add_term({0}, Mat{{1}});
  s.E.add_term({0}, Mat{{1}});
  s.C.add_term({0}, Mat{{1}});
  return s;
}

PolySystem toy_example() {
  PolySystem s = PolySystem::zeros(2, 1, 1, 1, 1);
  s.A.add_term({0}, Mat{{-1, -0.5}, {1, -2}});
  s.A.add_term({1}, Mat{{0, 1}, {0, 0}});
  s.B.add_term({0}, Mat{{1}, {0}});
  s.E.add_term({0}, Mat{{1}, {1}});
  s.C.add_term({0}, Mat{{1, 1}});
  return s;
}

void robust_synthesis(Outcome& o) {
  struct Case {
    const char* name;
    PolySystem p;
    ControllerSpec spec;
  };
  const Case cases[] = {{"scalar", scalar_example(), ControllerSpec::bounded(Mat{{-4}}, Mat{{0}})},
                        {"2x2", toy_example(), ControllerSpec::full()}};
  for (const Case& c : cases) {
    const RobustProgram prog = robust_stabilize(c.p, FreeConstant{}, c.spec);
    const RobustSolveResult r = solve_robust(prog);
    o.require(r.feasible(), std::string(c.name) + " infeasible");
    if (!r.feasible()) continue;
    const SynthesisResult k = robust_controller(prog, r);
    const GridVerdict v = certify_controller_on_grid(c.p, k.K, r.gamma, 101);
    o.require(v.status == GridStatus::kConsistent && v.points == 101, std::string(c.name) + ": " + v.detail);
    o.detail << c.name << " gamma " << r.gamma << " worst grid gain " << v.worst_gain << "; ";
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"transposition duality", transposition},
      {"drug model closed forms", drug_model_table},
      {"gene expression vertex gains", gene_expression_table},
      {"polynomial uncertainty tables", polynomial_tables},
      {"time-delay exactness", delay_exactness},
      {"synthesis certification", synthesis_certification},
      {"Handelman regression", handelman_regression},
      {"reduction consistency", reduction_consistency},
      {"robust synthesis", robust_synthesis},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", index, c.title,
                o.detail.str().c_str(), secs);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
