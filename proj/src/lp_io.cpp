#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "poslp/error.hpp"
#include "poslp/lpcore.hpp"

namespace poslp {

namespace {

std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_num(const std::string& tok) {
  if (tok == "inf") return kInf;
  if (tok == "-inf") return -kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad number in LP text: " + tok);
  }
  if (used != tok.size()) throw ValidationError("bad number in LP text: " + tok);
  return v;
}

}  // namespace

// Layout:
//   lp <num_vars> <num_rows>
//   min <c_1> ... <c_n>
//   bound <j> <lower> <upper>        (only for non-free variables)
//   name <j> <label>                 (only for named variables)
//   le|eq <rhs> <a_1> ... <a_n>
std::string format_lp(const LinearProgram& lp) {
  std::string out = "lp " + std::to_string(lp.num_vars) + " " +
                    std::to_string(lp.rows.size()) + "\nmin";
  for (double c : lp.objective) out += " " + num(c);
  out += "\n";
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.var_lower[j] != -kInf || lp.var_upper[j] != kInf) {
      out += "bound " + std::to_string(j) + " " + num(lp.var_lower[j]) + " " +
             num(lp.var_upper[j]) + "\n";
    }
  }
  for (std::size_t j = 0; j < lp.names.size(); ++j) {
    if (!lp.names[j].empty()) out += "name " + std::to_string(j) + " " + lp.names[j] + "\n";
  }
  for (const LpRow& r : lp.rows) {
    out += r.relation == Relation::kEqual ? "eq " : "le ";
    out += num(r.rhs);
    for (double a : r.coeffs) out += " " + num(a);
    out += "\n";
  }
  return out;
}

void write_lp(const LinearProgram& lp, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open " + path + " for writing");
  f << format_lp(lp);
  if (!f) throw ValidationError("failed writing " + path);
}

LinearProgram parse_lp(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty LP text");
  std::istringstream head(line);
  std::string tag;
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(head >> tag >> n >> m) || tag != "lp") throw ValidationError("missing LP header");
  LinearProgram lp = LinearProgram::with_vars(n);
  bool have_objective = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (kind == "min") {
      if (toks.size() != n) throw ValidationError("objective has the wrong length");
      for (std::size_t j = 0; j < n; ++j) lp.objective[j] = parse_num(toks[j]);
      have_objective = true;
    } else if (kind == "bound") {
      if (toks.size() != 3) throw ValidationError("malformed bound line");
      const std::size_t j = std::stoul(toks[0]);
      if (j >= n) throw ValidationError("bound index out of range");
      lp.var_lower[j] = parse_num(toks[1]);
      lp.var_upper[j] = parse_num(toks[2]);
    } else if (kind == "name") {
      if (toks.size() != 2) throw ValidationError("malformed name line");
      const std::size_t j = std::stoul(toks[0]);
      if (j >= n) throw ValidationError("name index out of range");
      lp.names[j] = toks[1];
    } else if (kind == "le" || kind == "eq") {
      if (toks.size() != n + 1) throw ValidationError("constraint has the wrong length");
      Vec a(n);
      for (std::size_t j = 0; j < n; ++j) a[j] = parse_num(toks[j + 1]);
      lp.add_row(std::move(a), kind == "eq" ? Relation::kEqual : Relation::kLessEqual,
                 parse_num(toks[0]));
    } else {
      throw ValidationError("unknown LP line: " + kind);
    }
  }
  if (!have_objective) throw ValidationError("LP text has no objective line");
  if (lp.rows.size() != m) throw ValidationError("LP row count does not match header");
  lp.validate();
  return lp;
}

std::uint64_t lp_fingerprint(const LinearProgram& lp) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : format_lp(lp)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace poslp
