#include "lbh/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace lbh {
namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Vertical cylinder over the geodesic sphere of radius rho about the chart
// origin. Chart (t, angles); base radius 2 tan(rho/2) or 2 tanh(rho/2).
Immersion vertical_cylinder(const AmbientSpace& space, double chart_radius) {
  const int m = space.m;
  ChartBox box;
  box.dim = m;
  box.lo[0] = -0.5;
  box.hi[0] = 0.5;
  angle_box(m - 1, box.lo, box.hi, 1);
  ChartMap map = [m, chart_radius](std::span<const Jet2> u) {
    AmbientJet out;
    out.dim = m + 1;
    std::array<Jet2, kMaxAmbientDim> dir{};
    sphere_point(m, u.data() + 1, dir.data());
    for (int a = 0; a < m; ++a) out.comp[a] = chart_radius * dir[a];
    out.comp[m] = u[0];
    return out;
  };
  return Immersion(space, box, std::move(map));
}

}  // namespace

void angle_box(int n_angles, ChartPoint& lo, ChartPoint& hi, int offset) {
  for (int i = 0; i < n_angles; ++i) {
    const bool azimuth = i + 1 == n_angles;
    lo[offset + i] = azimuth ? -1.0 : 0.6;
    hi[offset + i] = azimuth ? 1.0 : 2.5;
  }
}

CatalogEntry slice(const AmbientSpace& space, double t0) {
  const int m = space.m;
  ChartMap map = [m, t0](std::span<const Jet2> x) {
    AmbientJet out;
    out.dim = m + 1;
    for (int a = 0; a < m; ++a) out.comp[a] = x[a];
    out.comp[m] = Jet2(t0);
    return out;
  };
  return {"slice", {{"t0", t0}},
          Immersion(space, ChartBox::cube(m, -0.5, 0.5), std::move(map)),
          LambdaStar::any(), true, "totally geodesic slice, theta = 1"};
}

CatalogEntry euclidean_cylinder(int m, int k, double a, double tilt) {
  require(m >= 2 && m <= 4, "euclidean_cylinder: m must be in [2, 4]");
  require(k >= 1 && k <= m - 1, "euclidean_cylinder: k must be in [1, m-1]");
  require(a > 0.0 && std::isfinite(a), "euclidean_cylinder: a must be positive");
  require(std::isfinite(tilt), "euclidean_cylinder: tilt must be finite");
  const AmbientSpace space = AmbientSpace::space_form(0, m);
  ChartBox box;
  box.dim = m;
  for (int i = 0; i < k; ++i) {
    box.lo[i] = -0.5;
    box.hi[i] = 0.5;
  }
  angle_box(m - k, box.lo, box.hi, k);
  const double cb = std::cos(tilt), sb = std::sin(tilt);
  ChartMap map = [m, k, a, cb, sb](std::span<const Jet2> u) {
    AmbientJet out;
    out.dim = m + 1;
    // Flat directions: t = u0, x^1..x^{k-1} = u1..u_{k-1}.
    for (int i = 1; i < k; ++i) out.comp[i - 1] = u[i];
    std::array<Jet2, kMaxAmbientDim> dir{};
    sphere_point(m - k + 1, u.data() + k, dir.data());
    for (int i = 0; i <= m - k; ++i) out.comp[k - 1 + i] = a * dir[i];
    const Jet2 t = u[0], xk = out.comp[k - 1];
    out.comp[m] = cb * t - sb * xk;
    out.comp[k - 1] = sb * t + cb * xk;
    return out;
  };
  const double ls = -(m - k) / (a * a);
  return {"euclidean_cylinder",
          {{"m", double(m)}, {"k", double(k)}, {"a", a}, {"tilt", tilt}},
          Immersion(space, box, std::move(map)),
          LambdaStar::of(ls),
          false,
          "R^" + std::to_string(k) + " x S^" + std::to_string(m - k) + "(" + fmt(a) +
              "), lambda = -(m-k)/a^2"};
}

CatalogEntry spherical_vertical_cylinder(int m, double rho) {
  require(m >= 2 && m <= 4, "spherical_vertical_cylinder: m must be in [2, 4]");
  require(rho > 0.0 && rho <= kPi / 2 + 1e-15,
          "spherical_vertical_cylinder: rho must be in (0, pi/2]");
  const AmbientSpace space = AmbientSpace::space_form(1, m);
  const double cot = std::cos(rho) / std::sin(rho);
  const bool minimal = std::abs(cot) < 1e-12;
  return {"spherical_vertical_cylinder",
          {{"m", double(m)}, {"rho", rho}},
          vertical_cylinder(space, 2.0 * std::tan(rho / 2.0)),
          LambdaStar::of((m - 1) * (1.0 - cot * cot)),
          minimal,
          minimal ? "vertical cylinder over a great sphere, minimal"
                  : "vertical cylinder over a distance sphere, lambda = (m-1)(1 - cot^2 rho)"};
}

CatalogEntry hyperbolic_vertical_cylinder(int m, double rho) {
  require(m >= 2 && m <= 4, "hyperbolic_vertical_cylinder: m must be in [2, 4]");
  require(rho > 0.0 && std::isfinite(rho), "hyperbolic_vertical_cylinder: rho must be positive");
  const AmbientSpace space = AmbientSpace::space_form(-1, m);
  const double coth = 1.0 / std::tanh(rho);
  return {"hyperbolic_vertical_cylinder",
          {{"m", double(m)}, {"rho", rho}},
          vertical_cylinder(space, 2.0 * std::tanh(rho / 2.0)),
          LambdaStar::of(-(m - 1) * (1.0 + coth * coth)),
          false,
          "vertical cylinder over a geodesic sphere, lambda = -(m-1)(1 + coth^2 rho)"};
}

CatalogEntry graph(const AmbientSpace& space, GraphFunction f, const ChartBox& domain,
                   std::string name) {
  require(domain.dim == space.m, "graph: domain dimension must equal m");
  const int m = space.m;
  ChartMap map = [m, f = std::move(f)](std::span<const Jet2> x) {
    AmbientJet out;
    out.dim = m + 1;
    for (int a = 0; a < m; ++a) out.comp[a] = x[a];
    out.comp[m] = f(x);
    return out;
  };
  return {std::move(name), {}, Immersion(space, domain, std::move(map)), LambdaStar::none(),
          false, "graph x -> (x, f(x))"};
}

Jet2 TrigPolynomial::operator()(std::span<const Jet2> x) const {
  Jet2 f(offset);
  for (std::size_t j = 0; j < amplitude.size(); ++j) {
    Jet2 arg(phase[j]);
    for (int i = 0; i < dim; ++i) arg += frequency[j][i] * x[i];
    f += amplitude[j] * cos(arg);
  }
  return f;
}

TrigPolynomial random_trig_polynomial(int dim, std::uint64_t seed, int terms, double amplitude,
                                      double max_frequency) {
  require(dim >= 1 && dim <= kMaxChartDim, "random_trig_polynomial: bad dimension");
  require(terms >= 1, "random_trig_polynomial: terms must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPolynomial p;
  p.dim = dim;
  p.offset = 0.5 * unit(rng);
  for (int j = 0; j < terms; ++j) {
    p.amplitude.push_back(amplitude * unit(rng));
    p.phase.push_back(kPi * unit(rng));
    ChartPoint w{};
    for (int i = 0; i < dim; ++i) w[i] = max_frequency * unit(rng);
    p.frequency.push_back(w);
  }
  return p;
}

CatalogEntry random_graph(const AmbientSpace& space, std::uint64_t seed) {
  CatalogEntry e = graph(space, random_trig_polynomial(space.m, seed),
                         ChartBox::cube(space.m, -0.5, 0.5), "graph");
  e.params["seed"] = double(seed);
  e.note = "graph of a seeded random trigonometric polynomial";
  return e;
}

AmbientPoint embedding_chart_convert(const AmbientSpace& space, const Vec& y, double t) {
  const int m = space.m;
  AmbientPoint p;
  p.base = Vec(m);
  p.t = t;
  if (space.c == 0) {
    require(y.size() == m, "embedding_chart_convert: expected m coordinates");
    p.base = y;
    return p;
  }
  require(y.size() == m + 1, "embedding_chart_convert: expected m+1 coordinates");
  const double q = space.c * y(0) * y(0) + y.tail(m).squaredNorm();
  if (std::abs(q - space.c) > 1e-9 * std::max(1.0, std::abs(y(0) * y(0))))
    throw DomainError("embedding_chart_convert: point is not on the model");
  if (space.c == -1 && y(0) <= 0.0)
    throw DomainError("embedding_chart_convert: lower sheet of the hyperboloid");
  if (1.0 + y(0) <= 1e-12) throw DomainError("embedding_chart_convert: projection pole");
  embedding_to_chart(space.c, m, y.data(), p.base.data());
  return p;
}

Vec chart_embedding_convert(const AmbientSpace& space, const AmbientPoint& p) {
  const int m = space.m;
  if (space.c == 0) return p.base;
  const double f = conformal_factor(space, p.base);
  Vec y(m + 1);
  y(0) = (1.0 - 0.25 * space.c * p.base.squaredNorm()) * f;
  y.tail(m) = p.base * f;
  return y;
}

std::vector<CatalogEntry> standard_entries() {
  std::vector<CatalogEntry> out;
  for (int m = 2; m <= 3; ++m) out.push_back(slice(AmbientSpace::space_form(1, m)));
  for (double a : {0.5, 1.0, 2.0}) out.push_back(euclidean_cylinder(2, 1, a));
  out.push_back(euclidean_cylinder(3, 1, 1.0));
  out.push_back(euclidean_cylinder(3, 2, 1.0));
  out.push_back(euclidean_cylinder(4, 2, 1.0));
  for (int m = 2; m <= 3; ++m)
    for (double rho : {kPi / 4, kPi / 3, kPi / 2}) out.push_back(spherical_vertical_cylinder(m, rho));
  for (double rho : {0.5, 1.0}) out.push_back(hyperbolic_vertical_cylinder(3, rho));
  return out;
}

}  // namespace lbh
