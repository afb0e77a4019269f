#include "poslp/robust_lp.hpp"

#include "poslp/error.hpp"

namespace poslp {

std::size_t RobustLinearProgram::add_var(std::string name, double lower, double upper) {
  if (!rows.empty()) throw ValidationError("variables must be added before rows");
  std::vector<double> obj(objective.begin(), objective.end());
  obj.push_back(0.0);
  objective = Vec(std::move(obj));
  var_lower.push_back(lower);
  var_upper.push_back(upper);
  names.push_back(std::move(name));
  return num_vars++;
}

void RobustLinearProgram::add_constant_row(const Vec& coeffs, double constant, StrictSense sense) {
  if (coeffs.size() != num_vars) throw DimensionError("robust row has the wrong length");
  std::vector<double> v(coeffs.begin(), coeffs.end());
  v.push_back(constant);
  PolyVec form(domain.num_params(), Vec(num_vars + 1));
  form.add_term(Exponent(domain.num_params(), 0), Vec(std::move(v)));
  rows.push_back(RobustRow{std::move(form), sense});
}

void RobustLinearProgram::add_row(PolyVec form, StrictSense sense) {
  if (form.zero().size() != num_vars + 1 || form.num_params() != domain.num_params()) {
    throw DimensionError("robust row has the wrong shape");
  }
  rows.push_back(RobustRow{std::move(form), sense});
}

unsigned RobustLinearProgram::degree() const {
  unsigned d = 0;
  for (const RobustRow& r : rows) d = std::max(d, r.form.degree());
  return d;
}

std::size_t RobustLinearProgram::num_robust_rows() const {
  std::size_t k = 0;
  for (const RobustRow& r : rows) k += r.is_constant() ? 0 : 1;
  return k;
}

void RobustLinearProgram::validate() const {
  if (objective.size() != num_vars || var_lower.size() != num_vars ||
      var_upper.size() != num_vars || names.size() != num_vars) {
    throw DimensionError("robust LP variable data has inconsistent lengths");
  }
  for (const RobustRow& r : rows) {
    if (r.form.zero().size() != num_vars + 1 || r.form.num_params() != domain.num_params()) {
      throw DimensionError("robust row has the wrong shape");
    }
  }
}

LpRow constant_row(const RobustRow& row, std::size_t num_vars, const StrictnessPolicy& policy) {
  const Vec c = row.form.coefficient(Exponent(row.form.num_params(), 0));
  std::vector<double> coeffs(c.begin(), c.begin() + static_cast<long>(num_vars));
  return strictify(StrictRow{Vec(std::move(coeffs)), c[num_vars], row.sense}, policy);
}

LinearProgram empty_program(const RobustLinearProgram& rlp) {
  LinearProgram lp = LinearProgram::with_vars(rlp.num_vars);
  lp.objective = rlp.objective;
  lp.var_lower = rlp.var_lower;
  lp.var_upper = rlp.var_upper;
  lp.names = rlp.names;
  return lp;
}

LinearProgram to_linear_program(const RobustLinearProgram& rlp) {
  rlp.validate();
  LinearProgram lp = empty_program(rlp);
  for (const RobustRow& r : rlp.rows) {
    if (!r.is_constant()) throw DegreeError("robust LP still depends on delta; relax it first");
    lp.rows.push_back(constant_row(r, rlp.num_vars, rlp.policy));
  }
  return lp;
}

}  // namespace poslp
