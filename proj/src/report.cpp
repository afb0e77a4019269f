#include "poslp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace poslp {

namespace {

using Json = Report::Json;

Json number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? Json("nan") : Json(v > 0 ? "inf" : "-inf");
  if (v == 0.0) return 0.0;  // no negative zero in reports
  return v;
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", j.get<double>());
    return buf;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat(const Json& j) {
  for (const Json& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

std::string inline_array(const Json& j) {
  std::string s = "[";
  bool first = true;
  for (const Json& e : j) {
    s += (first ? "" : ", ") + scalar_text(e);
    first = false;
  }
  return s + "]";
}

void emit(std::ostringstream& os, const Json& j, int indent);

void emit_entry(std::ostringstream& os, const std::string& label, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object() || (v.is_array() && !is_flat(v))) {
    os << pad << label << ":\n";
    emit(os, v, indent + 2);
  } else if (v.is_array()) {
    os << pad << label << ": " << inline_array(v) << "\n";
  } else {
    os << pad << label << ": " << scalar_text(v) << "\n";
  }
}

void emit(std::ostringstream& os, const Json& j, int indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) emit_entry(os, k, v, indent);
    return;
  }
  std::size_t i = 0;
  for (const Json& v : j) emit_entry(os, "[" + std::to_string(i++) + "]", v, indent);
}

}  // namespace

const char* const kConservatismNote =
    "robust bounds are sufficient conditions only: gamma is an upper bound and infeasibility "
    "does not prove instability";

Report::Report(const std::string& command) { doc_["command"] = command; }

std::string Report::render(ReportFormat format) const {
  if (format == ReportFormat::kStructured) return doc_.dump(2) + "\n";
  std::ostringstream os;
  emit(os, doc_, 0);
  return os.str();
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row_vec(i)));
  return a;
}

Json to_json(const StrictnessPolicy& policy) {
  Json j;
  j["epsilon"] = policy.epsilon;
  j["lambda_floor"] = policy.lambda_floor;
  return j;
}

Json to_json(const GridVerdict& verdict) {
  Json j;
  j["status"] = to_string(verdict.status);
  j["points"] = verdict.points;
  j["worst_gain"] = number(verdict.worst_gain);
  Json pt = Json::array();
  for (double x : verdict.worst_point) pt.push_back(number(x));
  j["worst_point"] = std::move(pt);
  if (!verdict.detail.empty()) j["detail"] = verdict.detail;
  return j;
}

Json to_json(const HandelmanCertificate& cert) {
  Json j;
  j["form"] = to_string(cert.form);
  Json prods = Json::array();
  for (const Exponent& e : cert.products) {
    Json p = Json::array();
    for (unsigned v : e) p.push_back(v);
    prods.push_back(std::move(p));
  }
  j["products"] = std::move(prods);
  j["upsilon_rows"] = cert.upsilon_rows;
  j["upsilon_cols"] = cert.upsilon_cols;
  j["relaxed_rows"] = cert.relaxed_rows;
  Json blocks = Json::array();
  for (const Vec& b : cert.blocks) blocks.push_back(to_json(b));
  j["multipliers"] = std::move(blocks);
  return j;
}

Json lp_size(const LinearProgram& lp) {
  Json j;
  j["variables"] = lp.num_vars;
  j["rows"] = lp.rows.size();
  return j;
}

}  // namespace poslp
