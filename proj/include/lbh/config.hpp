#pragma once

// Run configuration: the JSON schema the CLI reads, validated and with
// defaults filled in.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lbh/catalog.hpp"
#include "lbh/grid.hpp"
#include "lbh/residuals.hpp"

namespace lbh {

/// Schema violation; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline constexpr int kMinResolution = 9;
inline constexpr int kMaxResolution = 1025;

/// Default points per axis: 81 for m = 2, 41 for m = 3, 21 for m = 4.
int default_resolution(int m);

struct RunConfig {
  AmbientSpace space;
  std::string kind;
  std::shared_ptr<const CatalogEntry> entry;  ///< empty when construction failed
  std::string construction_error;
  std::optional<double> lambda;  ///< resolved value, empty when the run has none
  std::string lambda_source;     ///< "value", "auto" or "none"
  bool biharmonic = false;       ///< lambda makes the surface lambda-biharmonic
  std::vector<int> resolution;
  ChartBox domain;
  int margin = 4;
  std::vector<Check> checks;
  ToleranceMap tolerances;  ///< one entry per enabled check
  std::uint64_t seed = 0;
  nlohmann::ordered_json echo;  ///< normalized config

  ChartGrid grid() const;
};

struct ParseOptions {
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
};

/// Throws ConfigError.
RunConfig parse_config(std::string_view text, const ParseOptions& opts = {});
/// Same, on an already parsed document.
RunConfig parse_config_document(const nlohmann::json& doc, const ParseOptions& opts = {});

/// Surface kinds accepted in "surface.kind".
std::vector<std::string_view> surface_kinds();

}  // namespace lbh
