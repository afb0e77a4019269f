#include "poslp/cli.hpp"

#include <cmath>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "poslp/error.hpp"
#include "poslp/gains.hpp"
#include "poslp/io.hpp"
#include "poslp/models.hpp"
#include "poslp/report.hpp"
#include "poslp/robust.hpp"
#include "poslp/synthesis.hpp"

namespace poslp {

namespace {

using Json = Report::Json;

struct Options {
  double epsilon = 1e-7;
  double lambda_floor = 1e-6;
  std::size_t grid = 101;
  std::uint64_t seed = 1;
  std::string dump_lp;
  std::string format = "text";

  std::string file;
  std::string norm = "l1";
  std::string zeros;
  std::string bounds;
  std::string scaling = "const";
  unsigned degree = 0;
  bool vertices = false;
  std::string form = "reduced";
  std::string target;

  StrictnessPolicy policy() const { return StrictnessPolicy{epsilon, lambda_floor}; }
};

// Failure that maps to exit code 1 after the report is printed.
struct Outcome {
  Report report;
  int code = 0;
};

Json not_applicable() {
  Json j;
  j["status"] = "not applicable";
  return j;
}

ScalingTemplate parse_scaling(const std::string& s) {
  auto number_after = [&](std::size_t pos) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(s.substr(pos), &used);
      if (used != s.size() - pos || d < 0) throw std::invalid_argument(s);
      return static_cast<unsigned>(d);
    } catch (const std::logic_error&) {
      throw ValidationError("bad scaling degree in \"" + s + "\"");
    }
  };
  if (s == "const") return FreeConstant{};
  if (s.rfind("poly:", 0) == 0) return FreePolynomial{number_after(5), false};
  if (s == "saturated") return FreePolynomial{2, true};
  if (s.rfind("saturated:", 0) == 0) return FreePolynomial{number_after(10), true};
  if (s == "delay") return ConstantDelay{};
  if (s.rfind("tvdelay:", 0) == 0) {
    try {
      return TimeVaryingDelay{std::stod(s.substr(8))};
    } catch (const std::logic_error&) {
      throw ValidationError("bad delay derivative bound in \"" + s + "\"");
    }
  }
  throw ValidationError("unknown scaling \"" + s + "\" (const, poly:<d>, saturated[:<d>], "
                        "delay, tvdelay:<mu>)");
}

GainNorm parse_norm(const std::string& s) { return s == "linf" ? GainNorm::kLinf : GainNorm::kL1; }

RelaxationForm parse_form(const std::string& s) {
  return s == "full" ? RelaxationForm::kFull : RelaxationForm::kReduced;
}

void maybe_dump(const Options& o, const LinearProgram& lp, Report& r) {
  if (o.dump_lp.empty()) return;
  write_lp(lp, o.dump_lp);
  r["lp_dump"] = o.dump_lp;
}

void common_fields(Report& r, const Options& o) { r["policy"] = to_json(o.policy()); }

ControllerSpec controller_spec(const Options& o, const std::string& system_text, std::size_t m,
                               std::size_t n) {
  ControllerSpec spec = parse_controller_spec(system_text, m, n);
  if (!o.zeros.empty()) {
    const ControllerSpec z = parse_controller_spec(read_file(o.zeros), m, n);
    spec.zero_pattern.insert(spec.zero_pattern.end(), z.zero_pattern.begin(), z.zero_pattern.end());
  }
  if (!o.bounds.empty()) {
    const ControllerSpec b = parse_controller_spec(read_file(o.bounds), m, n);
    if (!b.has_bounds()) throw ValidationError("bounds file needs K_lower and K_upper");
    spec.k_lower = b.k_lower;
    spec.k_upper = b.k_upper;
  }
  spec.validate(m, n);
  return spec;
}

Json controller_json(const SynthesisResult& res) {
  Json j;
  j["K"] = to_json(res.K);
  Json mu = Json::array();
  for (const Vec& v : res.mu_col) mu.push_back(to_json(v));
  j["mu_col"] = std::move(mu);
  return j;
}

// --- subcommands -------------------------------------------------------------

Outcome cmd_check(const Options& o) {
  Outcome out{Report("check")};
  Report& r = out.report;
  const PositiveLtiSystem sys = parse_system(read_file(o.file));
  common_fields(r, o);
  r["dimensions"] = Json{{"n", sys.n()}, {"m", sys.m()}, {"p", sys.p()}, {"q", sys.q()}};
  const PositivityReport rep = classify(sys);
  Json viol = Json::array();
  for (const SignViolation& v : rep.violations) {
    viol.push_back(Json{{"matrix", v.matrix}, {"row", v.row}, {"col", v.col}, {"value", v.value}});
  }
  r["positive"] = rep.is_positive;
  r["violations"] = std::move(viol);
  r["metzler_A"] = sys.metzler_A();
  if (sys.metzler_A()) {
    const bool stable = is_stable(sys.A(), o.policy());
    r["stable"] = stable;
    r["status"] = stable ? "stable" : "unstable";
    if (stable && rep.is_positive) {
      const Mat h0 = static_gain(sys, o.policy());
      const OracleGains g = gains_of_static_gain(h0);
      r["static_gain"] = to_json(h0);
      r["oracle_l1"] = g.l1;
      r["oracle_linf"] = g.linf;
    }
  } else {
    r["status"] = "not metzler";
  }
  r["grid_verdict"] = not_applicable();
  return out;
}

Outcome cmd_gain(const Options& o) {
  Outcome out{Report("gain")};
  Report& r = out.report;
  const PositiveLtiSystem sys = parse_system(read_file(o.file));
  const GainNorm norm = parse_norm(o.norm);
  r["norm"] = to_string(norm);
  common_fields(r, o);
  try {
    const GainResult g = norm == GainNorm::kL1 ? l1_gain(sys, o.policy()) : linf_gain(sys, o.policy());
    maybe_dump(o, g.lp, r);
    r["status"] = "optimal";
    r["gamma"] = g.gamma;
    r["epsilon"] = o.epsilon;
    r["witness_lambda"] = to_json(g.lambda);
    const OracleGains og = oracle_gains(sys, o.policy());
    r["oracle_gamma"] = norm == GainNorm::kL1 ? og.l1 : og.linf;
    r["lp"] = lp_size(g.lp);
    r["grid_verdict"] = to_json(
        certify_gain_on_grid(PolySystem::from_constant(sys), norm, g.gamma, 1));
  } catch (const StabilityError& e) {
    r["status"] = "infeasible";
    r["epsilon"] = o.epsilon;
    r["diagnostic"] = e.what();
    r["grid_verdict"] = not_applicable();
    out.code = 1;
  }
  return out;
}

Outcome cmd_synth(const Options& o) {
  Outcome out{Report("synth")};
  Report& r = out.report;
  const std::string text = read_file(o.file);
  const PositiveLtiSystem sys = parse_system(text);
  if (!sys.has_input()) throw ModelError("synthesis needs the input matrices B and D");
  const ControllerSpec spec = controller_spec(o, text, sys.m(), sys.n());
  r["norm"] = "linf";
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  try {
    const SynthesisResult res = stabilize_linf(sys, spec, o.policy());
    maybe_dump(o, res.lp, r);
    r["status"] = "optimal";
    r["gamma"] = res.gamma;
    r["witness_lambda"] = to_json(res.lambda);
    r["controller"] = controller_json(res);
    r["lp"] = lp_size(res.lp);
    r["grid_verdict"] =
        to_json(certify_controller_on_grid(PolySystem::from_constant(sys), res.K, res.gamma, 1));
  } catch (const InfeasibleError& e) {
    r["status"] = "infeasible";
    r["diagnostic"] = e.what();
    r["grid_verdict"] = not_applicable();
    out.code = 1;
  }
  return out;
}

void robust_fields(Report& r, const RobustProgram& prog, const RobustSolveResult& res) {
  Json sizes;
  sizes["robust_variables"] = prog.rlp.num_vars;
  sizes["robust_rows"] = prog.rlp.rows.size();
  sizes["delta_dependent_rows"] = prog.rlp.num_robust_rows();
  sizes["relaxed"] = lp_size(res.relaxed.lp);
  r["lp"] = std::move(sizes);
  r["handelman_degree"] = res.handelman_degree;
  r["relaxation"] = to_string(res.relaxed.form);
}

Outcome cmd_robust_gain(const Options& o) {
  Outcome out{Report("robust-gain")};
  Report& r = out.report;
  const std::string text = read_file(o.file);
  const DocumentKind kind = document_kind(text);
  const GainNorm norm = parse_norm(o.norm);
  r["norm"] = to_string(norm);
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  r["conservatism"] = kConservatismNote;

  if (o.vertices) {
    if (kind != DocumentKind::kPolynomial) throw ValidationError("--vertices needs a polynomial system");
    const PolySystem psys = parse_poly_system(text);
    r["method"] = "vertices";
    try {
      const VertexGainResult v = vertex_gain(psys, norm, o.policy());
      maybe_dump(o, v.lp, r);
      r["status"] = "optimal";
      r["gamma"] = v.gamma;
      r["witness_lambda"] = to_json(v.lambda);
      r["vertices"] = v.num_vertices;
      r["lp"] = lp_size(v.lp);
      r["grid_verdict"] = to_json(certify_gain_on_grid(psys, norm, v.gamma, o.grid));
    } catch (const StabilityError& e) {
      r["status"] = "infeasible";
      r["diagnostic"] = e.what();
      r["grid_verdict"] = not_applicable();
      out.code = 1;
    }
    return out;
  }

  const ScalingTemplate scaling = parse_scaling(o.scaling);
  r["method"] = "integral linear constraints";
  r["scalings"] = describe(scaling);
  LftSystem lft;
  if (kind == DocumentKind::kPolynomial) {
    const PolySystem psys = parse_poly_system(text);
    lft = norm == GainNorm::kL1 ? lft_from_polynomial(psys) : transpose_lft(psys).lft;
  } else if (kind == DocumentKind::kLft) {
    const LftSystem user = parse_lft(text);
    lft = norm == GainNorm::kL1 ? user : transpose_lft(user).lft;
  } else {
    throw ValidationError("robust-gain needs a polynomial or LFT document");
  }
  const RobustProgram prog = robust_l1(lft, scaling, o.policy());
  const RobustSolveResult res = solve_robust(prog, {parse_form(o.form), o.degree});
  maybe_dump(o, res.relaxed.lp, r);
  robust_fields(r, prog, res);
  if (!res.feasible()) {
    r["status"] = to_string(res.status);
    r["diagnostic"] = "relaxed robust program is infeasible; try richer scalings or a higher degree";
    r["grid_verdict"] = not_applicable();
    out.code = 1;
    return out;
  }
  r["status"] = "optimal";
  r["gamma"] = res.gamma;
  r["witness_lambda"] = to_json(res.lambda);
  r["grid_verdict"] = to_json(certify_gain_on_grid(lft, res.gamma, o.grid));
  r["certificate"] = to_json(res.certificate);
  return out;
}

Outcome cmd_robust_synth(const Options& o) {
  Outcome out{Report("robust-synth")};
  Report& r = out.report;
  const std::string text = read_file(o.file);
  if (document_kind(text) != DocumentKind::kPolynomial) {
    throw ValidationError("robust-synth needs a polynomial system");
  }
  const PolySystem psys = parse_poly_system(text);
  const ControllerSpec spec = controller_spec(o, text, psys.m, psys.n);
  const ScalingTemplate scaling = parse_scaling(o.scaling);
  r["norm"] = "linf";
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  r["conservatism"] = kConservatismNote;
  r["scalings"] = describe(scaling);
  const RobustProgram prog = robust_stabilize(psys, scaling, spec, o.policy());
  const RobustSolveResult res = solve_robust(prog, {parse_form(o.form), o.degree});
  maybe_dump(o, res.relaxed.lp, r);
  robust_fields(r, prog, res);
  if (!res.feasible()) {
    r["status"] = to_string(res.status);
    r["diagnostic"] = "no robust controller certified; try richer scalings or a higher degree";
    r["grid_verdict"] = not_applicable();
    out.code = 1;
    return out;
  }
  const SynthesisResult k = robust_controller(prog, res);
  r["status"] = "optimal";
  r["gamma"] = res.gamma;
  r["witness_lambda"] = to_json(res.lambda);
  r["controller"] = controller_json(k);
  r["grid_verdict"] = to_json(certify_controller_on_grid(psys, k.K, res.gamma, o.grid));
  r["certificate"] = to_json(res.certificate);
  return out;
}

// --- reproduce -----------------------------------------------------------------

// Aggregate verdict: refuted beats inconclusive beats consistent.
struct VerdictTally {
  GridVerdict total;

  void add(const GridVerdict& v) {
    total.points += v.points;
    if (v.status == GridStatus::kRefuted ||
        (v.status == GridStatus::kInconclusive && total.status == GridStatus::kConsistent)) {
      total.status = v.status;
      total.detail = v.detail;
    }
    if (v.worst_gain >= total.worst_gain && total.status == GridStatus::kConsistent) {
      total.worst_gain = v.worst_gain;
      total.worst_point = v.worst_point;
    }
  }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome reproduce_table2(const Options& o) {
  Outcome out{Report("reproduce table2")};
  Report& r = out.report;
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  r["seed"] = o.seed;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> rate(0.1, 10.0);
  std::uniform_real_distribution<double> weight(0.1, 5.0);
  Json rows = Json::array();
  VerdictTally tally;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double a11 = rate(rng), a12 = rate(rng), a21 = rate(rng);
    const double k1 = weight(rng), k2 = weight(rng);
    const double t1 = 1.0 / a11;
    const double t2 = a21 / (a11 * a12);
    Mat c1(1, 2), c2(1, 2);
    c1(0, 0) = 1.0;
    c2(0, 1) = 1.0;
    const Mat ck = Mat::diag(Vec(std::vector<double>{k1, k2}));
    Json row;
    row["a11"] = a11;
    row["a12"] = a12;
    row["a21"] = a21;
    row["k1"] = k1;
    row["k2"] = k2;
    auto entry = [&](const char* label, const Mat& c, double l1_exact, double linf_exact) {
      const PositiveLtiSystem sys = drug_model(a11, a12, a21, c);
      const double l1 = l1_gain(sys, o.policy()).gamma;
      const double li = linf_gain(sys, o.policy()).gamma;
      worst = std::max({worst, rel_diff(l1, l1_exact), rel_diff(li, linf_exact)});
      tally.add(certify_gain_on_grid(PolySystem::from_constant(sys), GainNorm::kL1, l1, 1));
      tally.add(certify_gain_on_grid(PolySystem::from_constant(sys), GainNorm::kLinf, li, 1));
      row[label] = Json{{"l1", l1}, {"l1_closed_form", l1_exact}, {"linf", li},
                        {"linf_closed_form", linf_exact}};
    };
    entry("C=[1 0]", c1, t1, t1);
    entry("C=[0 1]", c2, t2, t2);
    entry("C=diag(k1,k2)", ck, k1 * t1 + k2 * t2, std::max(k1 * t1, k2 * t2));
    rows.push_back(std::move(row));
  }
  r["rows"] = std::move(rows);
  r["max_relative_error"] = worst;
  r["status"] = "optimal";
  r["grid_verdict"] = to_json(tally.total);
  return out;
}

Outcome reproduce_table3(const Options& o) {
  Outcome out{Report("reproduce table3")};
  Report& r = out.report;
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  const double spreads[] = {0.0, 0.1, 0.3, 0.5, 0.7};
  const double published[] = {2.0, 2.7162, 5.3063, 12.0003, 37.7783};
  Json rows = Json::array();
  VerdictTally tally;
  for (std::size_t i = 0; i < 5; ++i) {
    const PolySystem psys = gene_expression_model(spreads[i]);
    const VertexGainResult v = vertex_gain(psys, GainNorm::kLinf, o.policy());
    tally.add(certify_gain_on_grid(psys, GainNorm::kLinf, v.gamma, o.grid));
    Json row;
    row["N"] = spreads[i];
    row["linf"] = v.gamma;
    row["theoretical"] = gene_expression_worst_gain(spreads[i]);
    row["published"] = published[i];
    row["relative_difference"] = rel_diff(v.gamma, published[i]);
    rows.push_back(std::move(row));
  }
  r["rows"] = std::move(rows);
  r["status"] = "optimal";
  r["grid_verdict"] = to_json(tally.total);
  return out;
}

Outcome reproduce_polynomial_table(const Options& o, GainNorm norm) {
  const bool l1 = norm == GainNorm::kL1;
  Outcome out{Report(l1 ? "reproduce table4" : "reproduce table5")};
  Report& r = out.report;
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  r["norm"] = to_string(norm);
  r["conservatism"] = kConservatismNote;
  const PolySystem psys = quadratic_uncertain_example();
  const LftSystem lft = l1 ? lft_from_polynomial(psys) : transpose_lft(psys).lft;
  const ScalingTemplate templates[] = {FreeConstant{}, FreePolynomial{1, true},
                                       FreePolynomial{2, true}};
  const double published[] = {l1 ? 133.95 : 86.195, l1 ? 133.95 : 86.195, l1 ? 94.167 : 82.025};
  Json rows = Json::array();
  VerdictTally tally;
  for (std::size_t i = 0; i < 3; ++i) {
    const RobustProgram prog = robust_l1(lft, templates[i], o.policy());
    const unsigned b = o.degree ? o.degree : std::max(1u, prog.rlp.degree());
    const RobustSolveResult res = solve_robust(prog, {parse_form(o.form), b});
    Json row;
    row["scalings"] = describe(templates[i]);
    row["handelman_degree"] = b;
    row["status"] = to_string(res.status);
    if (res.feasible()) {
      row["gamma"] = res.gamma;
      row["published"] = published[i];
      row["relative_difference"] = rel_diff(res.gamma, published[i]);
      tally.add(certify_gain_on_grid(lft, res.gamma, o.grid));
    }
    rows.push_back(std::move(row));
  }
  double exact = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const std::vector<double> pt{k / 1000.0};
    const OracleGains g = oracle_gains(psys.freeze(pt), o.policy());
    exact = std::max(exact, l1 ? g.l1 : g.linf);
  }
  r["rows"] = std::move(rows);
  r["exact_gain"] = exact;
  r["exact_published"] = l1 ? 92.8358 : 82.0249;
  r["status"] = "optimal";
  r["grid_verdict"] = to_json(tally.total);
  return out;
}

Outcome reproduce_ex72(const Options& o) {
  Outcome out{Report("reproduce ex72")};
  Report& r = out.report;
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  const HandelmanBasis basis{BoxDomain{{-1.0}, {1.0}}, 2};
  const std::vector<Exponent> products = enumerate_products(basis);
  const Mat ups = build_upsilon(basis, products);
  // Published numbering of the nonconstant products.
  const std::vector<Exponent> order = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  Json taus = Json::array();
  const char* names[] = {"g1", "g2", "g1*g2", "g1^2", "g2^2"};
  for (std::size_t t = 0; t < order.size(); ++t) {
    taus.push_back("tau" + std::to_string(t + 1) + " : " + names[t]);
  }
  r["forms"] = Json::array({"g1 = x + 1", "g2 = 1 - x"});
  r["products"] = std::move(taus);
  Json chis = Json::object();
  for (int deg = 2; deg >= 0; --deg) {
    std::string line;
    Json coeffs = Json::array();
    for (std::size_t t = 0; t < order.size(); ++t) {
      std::size_t col = 0;
      while (products[col] != order[t]) ++col;
      const double c = ups(static_cast<std::size_t>(deg), col);
      coeffs.push_back(static_cast<int>(c));
      if (c == 0.0) continue;
      const std::string name = "tau" + std::to_string(t + 1);
      const double mag = std::abs(c);
      const std::string term = (mag == 1.0 ? "" : std::to_string(static_cast<int>(mag))) + name;
      if (line.empty()) {
        line = (c < 0 ? "-" : "") + term;
      } else {
        line += (c < 0 ? " - " : " + ") + term;
      }
    }
    chis["chi" + std::to_string(deg)] = Json{{"expression", line}, {"coefficients", coeffs}};
  }
  r["coefficients"] = std::move(chis);
  r["status"] = "optimal";
  r["grid_verdict"] = not_applicable();
  return out;
}

Outcome reproduce_delay(const Options& o) {
  Outcome out{Report("reproduce delay")};
  Report& r = out.report;
  common_fields(r, o);
  r["epsilon"] = o.epsilon;
  r["seed"] = o.seed;
  Json rows = Json::array();
  std::size_t agree = 0;
  const std::size_t total = 20;
  for (std::size_t i = 0; i < total; ++i) {
    const bool stable = i % 2 == 0;
    const DelayPair d = random_delay_pair(3 + i % 4, stable, o.seed * 1000 + i);
    const ExactGainResult ex = exact_constant_delta(delay_lft(d.a, d.ah), Mat::identity(d.a.rows()),
                                                    o.policy());
    const bool direct = is_stable(d.a + d.ah, o.policy());
    agree += ex.feasible == direct ? 1 : 0;
    rows.push_back(Json{{"n", d.a.rows()},
                        {"constructed", stable ? "stable" : "unstable"},
                        {"saturated_ilc_feasible", ex.feasible},
                        {"A_plus_Ah_stable", direct}});
  }
  r["rows"] = std::move(rows);
  r["agreement"] = std::to_string(agree) + "/" + std::to_string(total);
  r["status"] = agree == total ? "optimal" : "mismatch";
  r["grid_verdict"] = not_applicable();
  if (agree != total) out.code = 1;
  return out;
}

Outcome cmd_reproduce(const Options& o) {
  if (o.target == "table2") return reproduce_table2(o);
  if (o.target == "table3") return reproduce_table3(o);
  if (o.target == "table4") return reproduce_polynomial_table(o, GainNorm::kL1);
  if (o.target == "table5") return reproduce_polynomial_table(o, GainNorm::kLinf);
  if (o.target == "ex72") return reproduce_ex72(o);
  return reproduce_delay(o);
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DimensionError*>(&e) ||
      dynamic_cast<const DomainError*>(&e)) {
    return 2;
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gains, controllers and robustness certificates for positive linear systems", "poslp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--epsilon", o.epsilon, "margin realizing strict inequalities")
      ->check(CLI::PositiveNumber);
  app.add_option("--lambda-floor", o.lambda_floor, "lower bound on Lyapunov weights")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", o.grid, "grid points per parameter for the pointwise check")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  app.add_option("--seed", o.seed, "seed for sampled instances");
  app.add_option("--dump-lp", o.dump_lp, "write the solved LP to this path");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "structured"}));

  auto* check = app.add_subcommand("check", "positivity and stability report");
  check->add_option("file", o.file, "system document")->required();

  auto* gain = app.add_subcommand("gain", "L1 or L-infinity gain by linear programming");
  gain->add_option("file", o.file, "system document")->required();
  gain->add_option("--norm", o.norm, "l1 (default) or linf")->check(CLI::IsMember({"l1", "linf"}));

  auto* synth = app.add_subcommand("synth", "state feedback with an L-infinity bound");
  synth->add_option("file", o.file, "system document with B and D")->required();
  synth->add_option("--norm", o.norm, "only linf")->check(CLI::IsMember({"linf"}));
  synth->add_option("--zeros", o.zeros, "document with a zero_pattern");
  synth->add_option("--bounds", o.bounds, "document with K_lower and K_upper");

  auto* rgain = app.add_subcommand("robust-gain", "gain bound over an uncertainty box");
  rgain->add_option("file", o.file, "polynomial or LFT document")->required();
  rgain->add_option("--norm", o.norm, "l1 (default) or linf")->check(CLI::IsMember({"l1", "linf"}));
  rgain->add_option("--scaling", o.scaling, "const | poly:<d> | saturated[:<d>] | delay | tvdelay:<mu>");
  rgain->add_option("--degree", o.degree, "Handelman degree (default: program degree + 2)");
  rgain->add_flag("--vertices", o.vertices, "vertex enumeration for affine dependence");
  rgain->add_option("--form", o.form, "Handelman relaxation form (default reduced)")->check(CLI::IsMember({"full", "reduced"}));

  auto* rsynth = app.add_subcommand("robust-synth", "state feedback common to the uncertainty box");
  rsynth->add_option("file", o.file, "polynomial document with B and D")->required();
  rsynth->add_option("--norm", o.norm, "only linf")->check(CLI::IsMember({"linf"}));
  rsynth->add_option("--scaling", o.scaling, "const | poly:<d> | saturated[:<d>] | delay | tvdelay:<mu>");
  rsynth->add_option("--degree", o.degree, "Handelman degree (default: program degree + 2)");
  rsynth->add_option("--form", o.form, "Handelman relaxation form (default reduced)")->check(CLI::IsMember({"full", "reduced"}));
  rsynth->add_option("--zeros", o.zeros, "document with a zero_pattern");
  rsynth->add_option("--bounds", o.bounds, "document with K_lower and K_upper");

  auto* repro = app.add_subcommand("reproduce", "published example data");
  repro->add_option("target", o.target)
      ->required()
      ->check(CLI::IsMember({"table2", "table3", "table4", "table5", "ex72", "delay"}));
  repro->add_option("--degree", o.degree, "Handelman degree (default: program degree)");
  repro->add_option("--form", o.form, "Handelman relaxation form (default reduced)")->check(CLI::IsMember({"full", "reduced"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  const ReportFormat format = o.format == "structured" ? ReportFormat::kStructured : ReportFormat::kText;
  try {
    Outcome res{Report("")};
    if (*check) res = cmd_check(o);
    else if (*gain) res = cmd_gain(o);
    else if (*synth) res = cmd_synth(o);
    else if (*rgain) res = cmd_robust_gain(o);
    else if (*rsynth) res = cmd_robust_synth(o);
    else res = cmd_reproduce(o);
    out << res.report.render(format);
    return res.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace poslp
