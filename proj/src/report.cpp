#include "lbh/run.hpp"

#include <cmath>
#include <cstdio>

namespace lbh {
namespace {

using ojson = nlohmann::ordered_json;

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string csv_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ReportFormat report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw ParameterError("unknown report format '" + std::string(name) + "'");
}

std::string emit(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "check,max_residual,tolerance,pass\n";
    for (const auto& r : report.checks)
      out += r.check + ',' + csv_number(r.max_residual) + ',' + csv_number(r.tolerance) + ',' +
             (r.pass ? "true" : "false") + '\n';
    return out;
  }
  ojson doc;
  doc["tool"] = "lbh";
  doc["tool_version"] = kToolVersion;
  doc["schema_version"] = kReportSchemaVersion;
  doc["config"] = report.config;
  ojson checks = ojson::array();
  for (const auto& r : report.checks) {
    ojson c;
    c["check"] = r.check;
    c["status"] = std::string(to_string(r.status));
    c["pass"] = r.pass;
    c["max_residual"] = finite_or_null(r.max_residual);
    c["max_abs_residual"] = finite_or_null(r.max_abs);
    c["scale"] = r.scale;
    c["tolerance"] = r.tolerance;
    if (!r.message.empty()) c["message"] = r.message;
    c["ambient"] = {{"c", r.c}, {"m", r.m}};
    ojson g;
    g["resolution"] = r.grid.resolution;
    g["lo"] = r.grid.lo;
    g["hi"] = r.grid.hi;
    g["spacing"] = r.grid.spacing;
    g["margin"] = r.grid.margin;
    c["grid"] = g;
    checks.push_back(c);
  }
  doc["checks"] = checks;
  doc["overall_pass"] = report.overall_pass;
  doc["wall_time_seconds"] = report.wall_time;
  return doc.dump(2) + "\n";
}

}  // namespace lbh
