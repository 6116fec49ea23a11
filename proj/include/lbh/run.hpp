#pragma once

// Check orchestration over a parsed config and report emission.

#include <string>
#include <string_view>
#include <vector>

#include "lbh/config.hpp"

namespace lbh {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
  nlohmann::ordered_json config;
  std::vector<ResidualReport> checks;
  bool overall_pass = false;
  double wall_time = 0.0;  ///< seconds
};

/// Samples the surface and evaluates every enabled check. Construction or
/// sampling failures become error entries (overall fail).
RunReport run(const RunConfig& config, int jobs = 1);

enum class ReportFormat { kJson, kCsv };

/// Throws ParameterError on anything but "json" or "csv".
ReportFormat report_format(std::string_view name);

/// JSON is byte-stable for identical inputs apart from "wall_time_seconds".
std::string emit(const RunReport& report, ReportFormat format);

/// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

}  // namespace lbh
