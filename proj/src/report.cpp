#include "siegel/report.hpp"

namespace siegel {

Json real_entry(const Real& x, int digits) { return decimal_string(x, digits); }

Json rational_entry(const Rational& q) {
  return decimal_string(q, 0);  // exact "num/den" form
}

Json LemmaReport::to_json() const {
  Json j;
  j["schema"] = kReportSchema;
  j["id"] = id;
  j["precision"] = kReportDigits;
  j["inputs"] = inputs;
  j["measured"] = measured;
  j["comparison"] = comparison;
  if (!fitted.empty()) j["fitted"] = fitted;
  j["verdict"] = verdict;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

std::string render_report(const Json& payload, int indent) {
  return payload.dump(indent) + "\n";
}

}  // namespace siegel
