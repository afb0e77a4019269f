#include "poslp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "poslp/error.hpp"

namespace poslp {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed document: ") + e.what());
  }
}

json number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  if (m.cols() == 0) return rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

double real(const json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(what + " must be finite");
  return x;
}

std::size_t count(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Mat mat_from(const json& j, std::size_t rows, std::size_t cols, const std::string& name) {
  if (!j.is_array()) throw ValidationError("matrix " + name + " must be an array of rows");
  if (j.empty() && rows * cols == 0) return Mat(rows, cols);
  if (j.size() != rows) {
    throw ValidationError("matrix " + name + " must have " + std::to_string(rows) + " rows");
  }
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols) {
      throw ValidationError("matrix " + name + " must have " + std::to_string(cols) + " columns");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = real(row[k], name + " entry");
  }
  return m;
}

Mat optional_mat(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
  if (!doc.contains(key)) return Mat(rows, cols);
  return mat_from(doc.at(key), rows, cols, key);
}

Mat required_mat(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
  if (!doc.contains(key)) {
    if (rows * cols == 0) return Mat(rows, cols);
    throw ValidationError(std::string("missing matrix \"") + key + "\"");
  }
  return mat_from(doc.at(key), rows, cols, key);
}

Exponent exponent_from(const json& j, std::size_t num_params) {
  if (!j.is_array() || j.size() != num_params) {
    throw DimensionError("exponents must list one power per parameter");
  }
  Exponent e;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ValidationError("exponents must be nonnegative integers");
    }
    e.push_back(v.get<unsigned>());
  }
  return e;
}

BoxDomain domain_from(const json& doc, std::size_t num_params) {
  if (!doc.contains("domain")) return BoxDomain::unit(num_params);
  const json& d = doc.at("domain");
  BoxDomain box;
  for (const char* key : {"lower", "upper"}) {
    const json& v = d.at(key);
    if (!v.is_array() || v.size() != num_params) {
      throw DimensionError("domain bounds must list one value per parameter");
    }
    for (const json& x : v) {
      (std::string(key) == "lower" ? box.lower : box.upper).push_back(real(x, "domain bound"));
    }
  }
  box.validate();
  return box;
}

json domain_json(const BoxDomain& box) {
  json d;
  json lo = json::array();
  json up = json::array();
  for (double v : box.lower) lo.push_back(number(v));
  for (double v : box.upper) up.push_back(number(v));
  d["lower"] = std::move(lo);
  d["upper"] = std::move(up);
  return d;
}

bool is_unit(const BoxDomain& box) {
  for (std::size_t k = 0; k < box.num_params(); ++k) {
    if (box.lower[k] != 0.0 || box.upper[k] != 1.0) return false;
  }
  return true;
}

json exponent_json(const Exponent& e) {
  json j = json::array();
  for (unsigned v : e) j.push_back(v);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Lookup and type failures inside a document become ValidationError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

DocumentKind document_kind(const std::string& text) {
  return guarded([&] {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ValidationError("document must be an object");
    if (!doc.contains("kind")) return DocumentKind::kSystem;
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "system") return DocumentKind::kSystem;
    if (kind == "polynomial") return DocumentKind::kPolynomial;
    if (kind == "lft") return DocumentKind::kLft;
    throw ValidationError("unknown document kind \"" + kind + "\"");
  });
}

PositiveLtiSystem parse_system(const std::string& text) {
  return guarded([&] {
    const json doc = parse_json(text);
    const std::size_t n = count(doc, "n");
    const std::size_t m = doc.contains("m") ? count(doc, "m") : 0;
    const std::size_t p = count(doc, "p");
    const std::size_t q = count(doc, "q");
    return PositiveLtiSystem(required_mat(doc, "A", n, n), optional_mat(doc, "B", n, m),
                             required_mat(doc, "C", q, n), optional_mat(doc, "D", q, m),
                             required_mat(doc, "E", n, p), required_mat(doc, "F", q, p));
  });
}

std::string format_system(const PositiveLtiSystem& sys) {
  json doc;
  doc["kind"] = "system";
  doc["n"] = sys.n();
  doc["m"] = sys.m();
  doc["p"] = sys.p();
  doc["q"] = sys.q();
  doc["A"] = mat_json(sys.A());
  if (sys.has_input()) doc["B"] = mat_json(sys.B());
  doc["C"] = mat_json(sys.C());
  if (sys.has_input()) doc["D"] = mat_json(sys.D());
  doc["E"] = mat_json(sys.E());
  doc["F"] = mat_json(sys.F());
  return dump(doc);
}

ControllerSpec parse_controller_spec(const std::string& text, std::size_t m, std::size_t n) {
  return guarded([&] {
    const json doc = parse_json(text);
    ControllerSpec spec;
    if (doc.contains("zero_pattern")) {
      for (const json& pair : doc.at("zero_pattern")) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer()) {
          throw ValidationError("zero_pattern entries must be [row, col] pairs");
        }
        spec.zero_pattern.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
      }
    }
    if (doc.contains("K_lower") != doc.contains("K_upper")) {
      throw ValidationError("K_lower and K_upper must be given together");
    }
    if (doc.contains("K_lower")) {
      spec.k_lower = mat_from(doc.at("K_lower"), m, n, "K_lower");
      spec.k_upper = mat_from(doc.at("K_upper"), m, n, "K_upper");
    }
    spec.validate(m, n);
    return spec;
  });
}

std::string format_controller_spec(const ControllerSpec& spec) {
  json doc = json::object();
  if (!spec.zero_pattern.empty()) {
    json zeros = json::array();
    for (const auto& [r, c] : spec.zero_pattern) zeros.push_back(json::array({r, c}));
    doc["zero_pattern"] = std::move(zeros);
  }
  if (spec.has_bounds()) {
    doc["K_lower"] = mat_json(spec.k_lower);
    doc["K_upper"] = mat_json(spec.k_upper);
  }
  return dump(doc);
}

PolySystem parse_poly_system(const std::string& text) {
  return guarded([&] {
    const json doc = parse_json(text);
    const std::size_t n = count(doc, "n");
    const std::size_t m = doc.contains("m") ? count(doc, "m") : 0;
    const std::size_t p = count(doc, "p");
    const std::size_t q = count(doc, "q");
    const std::size_t np = count(doc, "num_params");
    PolySystem s = PolySystem::zeros(n, m, p, q, np);
    s.domain = domain_from(doc, np);
    if (!doc.contains("terms") || !doc.at("terms").is_array()) {
      throw ValidationError("polynomial document needs a \"terms\" array");
    }
    for (const json& t : doc.at("terms")) {
      const Exponent e = exponent_from(t.at("exponents"), np);
      s.A.add_term(e, optional_mat(t, "A", n, n));
      s.B.add_term(e, optional_mat(t, "B", n, m));
      s.C.add_term(e, optional_mat(t, "C", q, n));
      s.D.add_term(e, optional_mat(t, "D", q, m));
      s.E.add_term(e, optional_mat(t, "E", n, p));
      s.F.add_term(e, optional_mat(t, "F", q, p));
    }
    s.validate();
    return s;
  });
}

std::string format_poly_system(const PolySystem& sys) {
  json doc;
  doc["kind"] = "polynomial";
  doc["n"] = sys.n;
  doc["m"] = sys.m;
  doc["p"] = sys.p;
  doc["q"] = sys.q;
  doc["num_params"] = sys.num_params();
  if (!is_unit(sys.domain)) doc["domain"] = domain_json(sys.domain);
  std::set<Exponent, MonomialOrder> exps;
  for (const PolyMatrix* pm : {&sys.A, &sys.B, &sys.C, &sys.D, &sys.E, &sys.F}) {
    for (const auto& [e, c] : pm->terms()) exps.insert(e);
  }
  json terms = json::array();
  for (const Exponent& e : exps) {
    json t;
    t["exponents"] = exponent_json(e);
    const std::pair<const char*, const PolyMatrix*> mats[] = {
        {"A", &sys.A}, {"B", &sys.B}, {"C", &sys.C}, {"D", &sys.D}, {"E", &sys.E}, {"F", &sys.F}};
    for (const auto& [key, pm] : mats) {
      if (pm->terms().count(e)) t[key] = mat_json(pm->coefficient(e));
    }
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  return dump(doc);
}

LftSystem parse_lft(const std::string& text) {
  return guarded([&] {
    const json doc = parse_json(text);
    const std::size_t n = count(doc, "n");
    const std::size_t n0 = count(doc, "n0");
    const std::size_t p = count(doc, "p");
    const std::size_t q = count(doc, "q");
    const std::size_t np = count(doc, "num_params");
    LftSystem lft;
    lft.A = required_mat(doc, "A", n, n);
    lft.E0 = required_mat(doc, "E0", n, n0);
    lft.E1 = required_mat(doc, "E1", n, p);
    lft.C0 = required_mat(doc, "C0", n0, n);
    lft.C1 = required_mat(doc, "C1", q, n);
    lft.F00 = optional_mat(doc, "F00", n0, n0);
    lft.F01 = optional_mat(doc, "F01", n0, p);
    lft.F10 = optional_mat(doc, "F10", q, n0);
    lft.F11 = optional_mat(doc, "F11", q, p);
    lft.domain = domain_from(doc, np);
    lft.delta = PolyMatrix(np, Mat(n0, n0));
    if (doc.contains("delta")) {
      for (const json& t : doc.at("delta")) {
        lft.delta.add_term(exponent_from(t.at("exponents"), np), mat_from(t.at("matrix"), n0, n0, "delta"));
      }
    }
    lft.validate();
    check_well_posed(lft);
    return lft;
  });
}

std::string format_lft(const LftSystem& lft) {
  json doc;
  doc["kind"] = "lft";
  doc["n"] = lft.n();
  doc["n0"] = lft.n0();
  doc["p"] = lft.p();
  doc["q"] = lft.q();
  doc["num_params"] = lft.num_params();
  if (!is_unit(lft.domain)) doc["domain"] = domain_json(lft.domain);
  doc["A"] = mat_json(lft.A);
  doc["E0"] = mat_json(lft.E0);
  doc["E1"] = mat_json(lft.E1);
  doc["C0"] = mat_json(lft.C0);
  doc["C1"] = mat_json(lft.C1);
  doc["F00"] = mat_json(lft.F00);
  doc["F01"] = mat_json(lft.F01);
  doc["F10"] = mat_json(lft.F10);
  doc["F11"] = mat_json(lft.F11);
  json delta = json::array();
  for (const auto& [e, c] : lft.delta.terms()) {
    json t;
    t["exponents"] = exponent_json(e);
    t["matrix"] = mat_json(c);
    delta.push_back(std::move(t));
  }
  doc["delta"] = std::move(delta);
  return dump(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

}  // namespace poslp
