#pragma once

#include <string>

#include <json.hpp>

#include "siegel/numeric.hpp"

namespace siegel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "siegel-gap/1";
inline constexpr int kReportDigits = 30;

// Numeric values in reports are decimal strings at a fixed precision so
// that identical runs serialize byte-identically.
Json real_entry(const Real& x, int digits = kReportDigits);
Json rational_entry(const Rational& q);

// Structured pass/fail record per lemma; the artifact's public contract.
struct LemmaReport {
  std::string id;        // e.g. "lemma7-local"
  Json inputs = Json::object();
  Json measured = Json::object();
  Json comparison = Json::object();
  Json fitted = Json::object();
  std::string verdict;   // "pass" | "fail" | "inconclusive"
  std::string detail;

  Json to_json() const;
};

// Serializes with a stable field order and no timestamps.
std::string render_report(const Json& payload, int indent = 2);

}  // namespace siegel
