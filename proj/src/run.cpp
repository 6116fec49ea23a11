#include "lbh/run.hpp"

#include <chrono>
#include <limits>

namespace lbh {

RunReport run(const RunConfig& config, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config.echo;

  auto fail_all = [&](const std::string& why) {
    for (Check id : config.checks) {
      ResidualReport r;
      r.check = std::string(check_info(id).name);
      r.tolerance = config.tolerances.at(r.check);
      r.status = CheckStatus::kError;
      r.max_residual = r.max_abs = std::numeric_limits<double>::infinity();
      r.message = why;
      r.c = config.space.c;
      r.m = config.space.m;
      report.checks.push_back(r);
    }
  };

  if (!config.entry) {
    fail_all("surface construction failed: " + config.construction_error);
  } else {
    try {
      const ChartGrid grid = config.grid();
      const SurfaceSample sample(config.entry->immersion, grid, jobs);
      CheckInputs in;
      in.lambda = config.lambda;
      in.biharmonic = config.biharmonic;
      report.checks = run_checks(sample, config.checks, in, config.tolerances);
    } catch (const std::exception& e) {
      report.checks.clear();
      fail_all(std::string("surface sampling failed: ") + e.what());
    }
  }
  report.overall_pass = true;
  for (const auto& r : report.checks) report.overall_pass = report.overall_pass && r.pass;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lbh
