#pragma once

// Verification reports shared by the scale verifiers and the CLI harness.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "sublin/measurable.hpp"
#include "sublin/rational.hpp"

namespace sublin {

inline constexpr int kReportSchema = 1;
inline constexpr std::size_t kMaxReportedViolations = 100;

struct Violation {
  nlohmann::ordered_json inputs;
  std::string expected;
  std::string got;
};

enum class CheckStatus { Pass, Fail, Unsupported };

std::string to_string(CheckStatus s);

struct CheckReport {
  std::string check;
  std::size_t samples = 0;
  std::size_t violation_count = 0;
  /// First kMaxReportedViolations violations in sample order.
  std::vector<Violation> violations;
  std::string mode = "sampled";
  std::vector<std::string> surrogate_flags;
  CheckStatus status = CheckStatus::Pass;
  /// Check-specific extras (max error, witness counts, ...).
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  void add_violation(Violation v);
  /// Pass iff no violations, unless already marked Unsupported.
  void finalize();
  bool passed() const noexcept { return status == CheckStatus::Pass; }
};

nlohmann::ordered_json to_json(const CheckReport& r);
nlohmann::ordered_json to_json(const RandomVariable& x);
inline nlohmann::ordered_json to_json(const PositiveRational& r) { return to_string(r); }

}  // namespace sublin
