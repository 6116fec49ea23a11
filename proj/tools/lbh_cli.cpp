// lbh: residual checks for lambda-biharmonic hypersurfaces of L^m(c) x R.
//
// Exit codes: 0 pass, 1 check failure, 2 configuration or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "lbh/kernels.hpp"
#include "lbh/rotation.hpp"
#include "lbh/run.hpp"

namespace {

using lbh::kExitCheckFailure;
using lbh::kExitConfigError;
using lbh::kExitPass;

struct Common {
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string kernel = "auto";
};

void add_common(CLI::App* app, Common& c, bool with_format) {
  if (with_format)
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", c.out, "Write output to PATH instead of stdout");
}

// Writes to --out or stdout; returns false on I/O failure.
bool write_output(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return bool(std::cout);
  }
  std::ofstream f(c.out, std::ios::binary);
  f << text;
  return bool(f);
}

std::string list_checks_text() {
  std::string out;
  for (const auto& info : lbh::all_checks()) {
    out += std::string(info.name) + "\t" + std::string(info.description);
    if (info.needs_lambda) out += " [needs lambda]";
    out += '\n';
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string catalog_text(const std::string& format) {
  const auto entries = lbh::standard_entries();
  auto star = [](const lbh::LambdaStar& s) -> std::string {
    switch (s.kind) {
      case lbh::LambdaStar::Kind::kValue: return fmt(s.value);
      case lbh::LambdaStar::Kind::kAny: return "any";
      case lbh::LambdaStar::Kind::kNone: return "none";
    }
    return "none";
  };
  if (format == "csv") {
    std::string out = "name,c,m,params,lambda_star,minimal\n";
    for (const auto& e : entries) {
      std::string params;
      for (const auto& [k, v] : e.params) params += (params.empty() ? "" : ";") + k + "=" + fmt(v);
      out += e.name + ',' + std::to_string(e.immersion.space().c) + ',' +
             std::to_string(e.immersion.space().m) + ',' + params + ',' + star(e.lambda_star) +
             ',' + (e.minimal ? "true" : "false") + '\n';
    }
    return out;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["ambient"] = {{"c", e.immersion.space().c}, {"m", e.immersion.space().m}};
    j["params"] = e.params;
    if (e.lambda_star.numeric()) j["lambda_star"] = e.lambda_star.value;
    else j["lambda_star"] = star(e.lambda_star);
    j["minimal"] = e.minimal;
    j["note"] = e.note;
    doc.push_back(j);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual checks for lambda-biharmonic hypersurfaces of L^m(c) x R"};
  app.require_subcommand(0, 1);
  bool list_flag = false;
  app.add_flag("--list-checks", list_flag, "List check names and exit");

  Common check_opts;
  std::string config_path;
  auto* check = app.add_subcommand("check", "Run the checks of a JSON config");
  check->add_option("--config", config_path, "Config file (- for stdin)")->required();
  add_common(check, check_opts, true);
  check->add_option("--seed", check_opts.seed, "Override the config seed");
  check->add_option("--jobs", check_opts.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  check->add_option("--kernel", check_opts.kernel, "Stencil kernels")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  Common cat_opts;
  auto* catalog = app.add_subcommand("catalog", "List catalog entries and their lambda values");
  add_common(catalog, cat_opts, true);

  Common list_opts;
  auto* list = app.add_subcommand("list-checks", "List check names");
  add_common(list, list_opts, false);

  Common rot_opts;
  int rc = 1, rm = 3, samples = 201;
  double h0 = 0.0, dh0 = 0.5, s0 = std::numbers::pi / 4, s1 = s0 + 0.6, step = 1e-3;
  auto* rot = app.add_subcommand("rotation", "Integrate a minimal rotation profile, emit a CSV trace");
  rot->add_option("--c", rc, "Base curvature (1 or -1)")->check(CLI::IsMember({1, -1}));
  rot->add_option("--m", rm, "Dimension")->check(CLI::Range(2, 4));
  rot->add_option("--h0", h0, "h(s0)");
  rot->add_option("--h-prime0", dh0, "h'(s0)");
  rot->add_option("--s0", s0, "Start of the profile interval");
  rot->add_option("--s1", s1, "End of the profile interval");
  rot->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  rot->add_option("--samples", samples, "Trace rows")->check(CLI::Range(2, 1000000));
  add_common(rot, rot_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (list_flag || *list) {
      return write_output(list_opts, list_checks_text()) ? kExitPass : kExitConfigError;
    }
    if (*catalog) {
      return write_output(cat_opts, catalog_text(cat_opts.format)) ? kExitPass : kExitConfigError;
    }
    if (*rot) {
      const auto space = lbh::AmbientSpace::space_form(rc, rm);
      const auto prof = lbh::minimal_profile_integrate(space, h0, dh0, s0, s1, step);
      std::ostringstream csv;
      lbh::write_profile_trace(csv, prof.profile, samples);
      return write_output(rot_opts, csv.str()) ? kExitPass : kExitConfigError;
    }
    if (*check) {
      if (!lbh::kernels::select(check_opts.kernel)) {
        std::cerr << "error: kernel '" << check_opts.kernel << "' unavailable on this machine\n";
        return kExitConfigError;
      }
      std::string text;
      if (config_path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream f(config_path, std::ios::binary);
        if (!f) {
          std::cerr << "error: cannot read " << config_path << "\n";
          return kExitConfigError;
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
      }
      lbh::RunConfig cfg;
      try {
        lbh::ParseOptions popts;
        popts.seed = check_opts.seed;
        cfg = lbh::parse_config(text, popts);
      } catch (const lbh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
      }
      const lbh::RunReport report = lbh::run(cfg, check_opts.jobs);
      const auto format = lbh::report_format(check_opts.format);
      if (!write_output(check_opts, lbh::emit(report, format))) {
        std::cerr << "error: cannot write " << check_opts.out << "\n";
        return kExitConfigError;
      }
      return report.overall_pass ? kExitPass : kExitCheckFailure;
    }
    std::cout << app.help();
    return kExitConfigError;
  } catch (const lbh::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
