#pragma once

#include <string>

#include "json.hpp"
#include "poslp/handelman.hpp"
#include "poslp/lpcore.hpp"
#include "poslp/robust.hpp"

namespace poslp {

enum class ReportFormat { kText, kStructured };

/// Ordered key-value document describing one run. Rendering is deterministic:
/// the same content always yields the same bytes.
class Report {
 public:
  using Json = nlohmann::ordered_json;

  explicit Report(const std::string& command);

  Json& operator[](const std::string& key) { return doc_[key]; }
  const Json& doc() const { return doc_; }

  std::string render(ReportFormat format) const;

 private:
  Json doc_;
};

Report::Json to_json(const Vec& v);
Report::Json to_json(const Mat& m);
Report::Json to_json(const StrictnessPolicy& policy);
Report::Json to_json(const GridVerdict& verdict);
Report::Json to_json(const HandelmanCertificate& cert);
/// Variable and row counts of an LP.
Report::Json lp_size(const LinearProgram& lp);

/// Sufficiency caveat attached to every robust result.
extern const char* const kConservatismNote;

}  // namespace poslp
