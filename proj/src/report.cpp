#include "sublin/report.hpp"

namespace sublin {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unsupported: return "unsupported";
  }
  return "?";
}

void CheckReport::add_violation(Violation v) {
  ++violation_count;
  if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(v));
}

void CheckReport::finalize() {
  if (status == CheckStatus::Unsupported) return;
  status = violation_count == 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

nlohmann::ordered_json to_json(const RandomVariable& x) {
  auto arr = nlohmann::ordered_json::array();
  for (double v : x.values()) arr.push_back(v);
  return arr;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["status"] = to_string(r.status);
  j["mode"] = r.mode;
  j["samples"] = r.samples;
  j["violation_count"] = r.violation_count;
  auto vs = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"inputs", v.inputs}, {"expected", v.expected}, {"got", v.got}});
  }
  j["violations"] = std::move(vs);
  j["surrogate_flags"] = r.surrogate_flags;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

}  // namespace sublin
