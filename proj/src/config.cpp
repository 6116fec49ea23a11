#include "lbh/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "lbh/expression.hpp"
#include "lbh/rotation.hpp"

namespace lbh {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + "." + key, "missing required field");
  return obj.at(key);
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
}

void allow_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(path + "." + k, "unknown field");
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

long long integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return (long long)x;
  }
  throw ConfigError(path, "expected an integer");
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& path) {
  return obj.contains(key) ? number(obj.at(key), path + "." + key) : fallback;
}

std::vector<double> number_list(const json& v, int dim, const std::string& path) {
  if (!v.is_array() || int(v.size()) != dim)
    throw ConfigError(path, "expected an array of " + std::to_string(dim) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

bool closed_form_kind(const std::string& kind) {
  return kind == "slice" || kind == "euclidean_cylinder" ||
         kind == "spherical_vertical_cylinder" || kind == "hyperbolic_vertical_cylinder";
}

// Builds the entry for kind; fills params (with defaults) into echo.
CatalogEntry build_entry(const AmbientSpace& space, const json& surf, const std::string& kind,
                         std::uint64_t seed, ojson& echo) {
  const std::string P = "surface";
  auto need_c = [&](int c) {
    if (space.c != c)
      throw ConfigError("ambient.c", kind + " requires c = " + std::to_string(c));
  };
  if (kind == "slice") {
    allow_keys(surf, P, {"kind", "t0"});
    const double t0 = number_or(surf, "t0", 0.0, P);
    echo["t0"] = t0;
    return slice(space, t0);
  }
  if (kind == "graph") {
    allow_keys(surf, P, {"kind", "seed", "terms", "amplitude", "max_frequency"});
    const std::uint64_t s =
        surf.contains("seed") ? std::uint64_t(integer(surf["seed"], P + ".seed")) : seed;
    const long long terms = surf.contains("terms") ? integer(surf["terms"], P + ".terms") : 4;
    const double amp = number_or(surf, "amplitude", 0.25, P);
    const double freq = number_or(surf, "max_frequency", 1.0, P);
    if (terms < 1 || terms > 64) throw ConfigError(P + ".terms", "must be in [1, 64]");
    echo["seed"] = s;
    echo["terms"] = terms;
    echo["amplitude"] = amp;
    echo["max_frequency"] = freq;
    CatalogEntry e = graph(space, random_trig_polynomial(space.m, s, int(terms), amp, freq),
                           ChartBox::cube(space.m, -0.5, 0.5), "graph");
    e.params["seed"] = double(s);
    return e;
  }
  if (kind == "euclidean_cylinder") {
    need_c(0);
    allow_keys(surf, P, {"kind", "k", "a", "tilt"});
    const long long k = integer(field(surf, "k", P), P + ".k");
    const double a = number(field(surf, "a", P), P + ".a");
    const double tilt = number_or(surf, "tilt", 0.0, P);
    echo["k"] = k;
    echo["a"] = a;
    echo["tilt"] = tilt;
    return euclidean_cylinder(space.m, int(k), a, tilt);
  }
  if (kind == "spherical_vertical_cylinder" || kind == "hyperbolic_vertical_cylinder") {
    const bool sph = kind == "spherical_vertical_cylinder";
    need_c(sph ? 1 : -1);
    allow_keys(surf, P, {"kind", "rho"});
    const double rho = number(field(surf, "rho", P), P + ".rho");
    echo["rho"] = rho;
    return sph ? spherical_vertical_cylinder(space.m, rho)
               : hyperbolic_vertical_cylinder(space.m, rho);
  }
  if (kind == "rotation_minimal") {
    if (space.c == 0) throw ConfigError("ambient.c", "rotation_minimal requires c = 1 or -1");
    allow_keys(surf, P, {"kind", "h0", "h_prime0", "s0", "s1", "step"});
    const double h0 = number_or(surf, "h0", 0.0, P);
    const double dh0 = number_or(surf, "h_prime0", 0.5, P);
    const double s0 = number_or(surf, "s0", std::numbers::pi / 4, P);
    const double s1 = number_or(surf, "s1", s0 + 0.6, P);
    const double step = number_or(surf, "step", 1e-3, P);
    echo["h0"] = h0;
    echo["h_prime0"] = dh0;
    echo["s0"] = s0;
    echo["s1"] = s1;
    echo["step"] = step;
    IntegratedProfile prof = minimal_profile_integrate(space, h0, dh0, s0, s1, step);
    return {"rotation_minimal",
            {{"h0", h0}, {"h_prime0", dh0}, {"s0", s0}, {"s1", s1}, {"step", step}},
            rotation_immersion(prof.profile),
            LambdaStar::any(),
            true,
            "rotation hypersurface with an integrated minimal profile"};
  }
  if (kind == "custom-graph-expression") {
    allow_keys(surf, P, {"kind", "expression"});
    const json& ex = field(surf, "expression", P);
    if (!ex.is_string()) throw ConfigError(P + ".expression", "expected a string");
    Expression f;
    try {
      f = Expression::parse(ex.get<std::string>(), space.m);
    } catch (const ExpressionError& e) {
      throw ConfigError(P + ".expression", e.what());
    }
    echo["expression"] = f.text();
    CatalogEntry e = graph(space, f, ChartBox::cube(space.m, -0.5, 0.5), kind);
    e.note = "graph of " + f.text();
    return e;
  }
  throw ConfigError(P + ".kind", "unknown surface kind '" + kind + "'");
}

}  // namespace

int default_resolution(int m) { return m <= 2 ? 81 : (m == 3 ? 41 : 21); }

std::vector<std::string_view> surface_kinds() {
  return {"slice",
          "graph",
          "euclidean_cylinder",
          "spherical_vertical_cylinder",
          "hyperbolic_vertical_cylinder",
          "rotation_minimal",
          "custom-graph-expression"};
}

ChartGrid RunConfig::grid() const { return ChartGrid::over(domain, resolution, margin); }

RunConfig parse_config(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config_document(doc, opts);
}

RunConfig parse_config_document(const json& doc, const ParseOptions& opts) {
  require_object(doc, "$");
  allow_keys(doc, "$", {"ambient", "surface", "lambda", "grid", "checks", "tolerances", "seed"});
  RunConfig cfg;

  const json& amb = field(doc, "ambient", "$");
  require_object(amb, "ambient");
  allow_keys(amb, "ambient", {"c", "m"});
  const long long c = integer(field(amb, "c", "ambient"), "ambient.c");
  const long long m = integer(field(amb, "m", "ambient"), "ambient.m");
  if (c < -1 || c > 1) throw ConfigError("ambient.c", "must be one of -1, 0, 1");
  if (m < 2 || m > 4) throw ConfigError("ambient.m", "must be in [2, 4]");
  cfg.space = AmbientSpace::space_form(int(c), int(m));

  if (doc.contains("seed")) {
    const long long s = integer(doc["seed"], "seed");
    if (s < 0) throw ConfigError("seed", "must be non-negative");
    cfg.seed = std::uint64_t(s);
  }
  if (opts.seed) cfg.seed = *opts.seed;

  const json& surf = field(doc, "surface", "$");
  require_object(surf, "surface");
  const json& kind = field(surf, "kind", "surface");
  if (!kind.is_string()) throw ConfigError("surface.kind", "expected a string");
  cfg.kind = kind.get<std::string>();
  ojson surf_echo;
  surf_echo["kind"] = cfg.kind;
  try {
    cfg.entry = std::make_shared<const CatalogEntry>(
        build_entry(cfg.space, surf, cfg.kind, cfg.seed, surf_echo));
  } catch (const ConfigError&) {
    throw;
  } catch (const ParameterError& e) {
    throw ConfigError("surface", e.what());
  } catch (const std::exception& e) {
    cfg.construction_error = e.what();
  }

  // Lambda.
  const LambdaStar star = cfg.entry ? cfg.entry->lambda_star : LambdaStar::none();
  auto auto_lambda = [&](bool explicit_auto) {
    cfg.lambda_source = "auto";
    if (star.numeric()) cfg.lambda = star.value;
    else if (star.kind == LambdaStar::Kind::kAny) cfg.lambda = 0.0;
    else if (explicit_auto && cfg.entry)
      throw ConfigError("lambda", "\"auto\" needs a surface with a known lambda");
    else cfg.lambda_source = "none";
  };
  if (!doc.contains("lambda") || doc["lambda"].is_null()) {
    auto_lambda(false);
  } else if (doc["lambda"].is_string()) {
    if (doc["lambda"].get<std::string>() != "auto")
      throw ConfigError("lambda", "expected a number or \"auto\"");
    auto_lambda(true);
  } else {
    cfg.lambda = number(doc["lambda"], "lambda");
    cfg.lambda_source = "value";
  }
  if (cfg.lambda && cfg.entry) {
    if (star.kind == LambdaStar::Kind::kAny || cfg.entry->minimal) cfg.biharmonic = true;
    else if (star.numeric())
      cfg.biharmonic = std::abs(*cfg.lambda - star.value) <= 1e-12 * std::max(1.0, std::abs(star.value));
  }

  // Grid.
  const int dim = int(m);
  cfg.resolution.assign(dim, default_resolution(dim));
  cfg.domain = cfg.entry ? cfg.entry->immersion.domain() : ChartBox::cube(dim, -0.5, 0.5);
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    require_object(g, "grid");
    allow_keys(g, "grid", {"resolution", "domain", "margin"});
    if (g.contains("resolution")) {
      const json& r = g["resolution"];
      if (r.is_array()) {
        if (int(r.size()) != dim)
          throw ConfigError("grid.resolution", "expected " + std::to_string(dim) + " entries");
        for (int i = 0; i < dim; ++i)
          cfg.resolution[i] = int(integer(r[i], "grid.resolution[" + std::to_string(i) + "]"));
      } else {
        cfg.resolution.assign(dim, int(integer(r, "grid.resolution")));
      }
      for (int i = 0; i < dim; ++i)
        if (cfg.resolution[i] < kMinResolution || cfg.resolution[i] > kMaxResolution)
          throw ConfigError("grid.resolution", "must be within [9, 1025]");
    }
    if (g.contains("margin")) {
      const long long mg = integer(g["margin"], "grid.margin");
      if (mg < 2) throw ConfigError("grid.margin", "must be at least 2");
      cfg.margin = int(mg);
    }
    if (g.contains("domain")) {
      const json& d = g["domain"];
      require_object(d, "grid.domain");
      allow_keys(d, "grid.domain", {"lo", "hi"});
      const auto lo = number_list(field(d, "lo", "grid.domain"), dim, "grid.domain.lo");
      const auto hi = number_list(field(d, "hi", "grid.domain"), dim, "grid.domain.hi");
      for (int i = 0; i < dim; ++i) {
        if (!(lo[i] < hi[i])) throw ConfigError("grid.domain", "need lo < hi on every axis");
        cfg.domain.lo[i] = lo[i];
        cfg.domain.hi[i] = hi[i];
      }
    }
  }
  for (int i = 0; i < dim; ++i)
    if (cfg.resolution[i] <= 2 * cfg.margin)
      throw ConfigError("grid.margin", "leaves no interior points");

  // Checks.
  if (doc.contains("checks")) {
    const json& ch = doc["checks"];
    if (!ch.is_array() || ch.empty()) throw ConfigError("checks", "expected a non-empty array");
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const std::string path = "checks[" + std::to_string(i) + "]";
      if (!ch[i].is_string()) throw ConfigError(path, "expected a check name");
      const auto id = check_from_name(ch[i].get<std::string>());
      if (!id) throw ConfigError(path, "unknown check '" + ch[i].get<std::string>() + "'");
      if (std::find(cfg.checks.begin(), cfg.checks.end(), *id) != cfg.checks.end())
        throw ConfigError(path, "duplicate check");
      const CheckInfo& info = check_info(*id);
      if (info.needs_lambda && !info.biharmonic_only && !cfg.lambda)
        throw ConfigError(path, std::string(info.name) + " needs a lambda");
      cfg.checks.push_back(*id);
    }
  } else {
    if (cfg.lambda) cfg.checks.push_back(Check::kLambdaResidual);
    for (Check id : identity_checks()) cfg.checks.push_back(id);
  }

  // Tolerances.
  const bool closed = closed_form_kind(cfg.kind);
  for (Check id : cfg.checks)
    cfg.tolerances[std::string(check_info(id).name)] = closed ? 1e-8 : 1e-5;
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    require_object(t, "tolerances");
    for (const auto& [name, v] : t.items()) {
      const std::string path = "tolerances." + name;
      if (!check_from_name(name)) throw ConfigError(path, "unknown check");
      const double tol = number(v, path);
      if (!(tol > 0.0)) throw ConfigError(path, "must be positive");
      if (cfg.tolerances.count(name)) cfg.tolerances[name] = tol;
    }
  }

  // Normalized echo.
  ojson& e = cfg.echo;
  e["ambient"] = {{"c", cfg.space.c}, {"m", cfg.space.m}};
  e["surface"] = surf_echo;
  e["lambda"] = cfg.lambda ? ojson(*cfg.lambda) : ojson(nullptr);
  e["lambda_source"] = cfg.lambda_source;
  ojson grid;
  grid["resolution"] = cfg.resolution;
  grid["domain"]["lo"] = std::vector<double>(cfg.domain.lo.begin(), cfg.domain.lo.begin() + dim);
  grid["domain"]["hi"] = std::vector<double>(cfg.domain.hi.begin(), cfg.domain.hi.begin() + dim);
  grid["margin"] = cfg.margin;
  e["grid"] = grid;
  ojson checks = ojson::array();
  for (Check id : cfg.checks) checks.push_back(std::string(check_info(id).name));
  e["checks"] = checks;
  ojson tols = ojson::object();
  for (Check id : cfg.checks) {
    const std::string name(check_info(id).name);
    tols[name] = cfg.tolerances.at(name);
  }
  e["tolerances"] = tols;
  e["seed"] = cfg.seed;
  return cfg;
}

}  // namespace lbh
