#pragma once

// Named example hypersurfaces with known lambda, and the conversion between
// the standard embeddings of S^m, H^m and the conformal chart.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lbh/immersion.hpp"

namespace lbh {

/// The lambda for which an entry is lambda-biharmonic.
struct LambdaStar {
  enum class Kind { kValue, kAny, kNone };
  Kind kind = Kind::kNone;
  double value = 0.0;

  static LambdaStar of(double v) { return {Kind::kValue, v}; }
  static LambdaStar any() { return {Kind::kAny, 0.0}; }
  static LambdaStar none() { return {Kind::kNone, 0.0}; }
  bool numeric() const { return kind == Kind::kValue; }
};

struct CatalogEntry {
  std::string name;
  std::map<std::string, double> params;
  Immersion immersion;
  LambdaStar lambda_star;
  bool minimal = false;
  std::string note;
};

/// x -> (x, t0) over [-0.5, 0.5]^m.
CatalogEntry slice(const AmbientSpace& space, double t0 = 0.0);

/// R^k x S^{m-k}(a) in R^{m+1}. The flat directions are t and x^1..x^{k-1};
/// tilt rotates the (t, x^k) plane so the angle function is not constant.
CatalogEntry euclidean_cylinder(int m, int k, double a, double tilt = 0.0);

/// S^{m-1}(rho) x R in S^m x R, rho the geodesic radius, 0 < rho <= pi/2.
CatalogEntry spherical_vertical_cylinder(int m, double rho);

/// S^{m-1}(rho) x R in H^m x R, rho > 0 the geodesic radius.
CatalogEntry hyperbolic_vertical_cylinder(int m, double rho);

using GraphFunction = std::function<Jet2(std::span<const Jet2>)>;

/// x -> (x, f(x)) over domain; no lambda.
CatalogEntry graph(const AmbientSpace& space, GraphFunction f, const ChartBox& domain,
                   std::string name = "graph");

/// f(x) = t0 + sum_j a_j cos(<w_j, x> + p_j).
struct TrigPolynomial {
  int dim = 0;
  double offset = 0.0;
  std::vector<double> amplitude, phase;
  std::vector<ChartPoint> frequency;

  Jet2 operator()(std::span<const Jet2> x) const;
};

/// Seeded random trig polynomial with `terms` modes, |a_j| <= amplitude and
/// frequency components in [-max_frequency, max_frequency].
TrigPolynomial random_trig_polynomial(int dim, std::uint64_t seed, int terms = 4,
                                      double amplitude = 0.25, double max_frequency = 1.0);

/// Graph of random_trig_polynomial(seed) over [-0.5, 0.5]^m.
CatalogEntry random_graph(const AmbientSpace& space, std::uint64_t seed);

/// Embedding coordinates y (length m+1 on the unit sphere for c = 1, on the
/// hyperboloid y0 > 0 for c = -1, length m for c = 0) to chart coordinates
/// x = 2 y_{1..m} / (1 + y0).
template <class S>
void embedding_to_chart(int c, int m, const S* y, S* x) {
  if (c == 0) {
    for (int i = 0; i < m; ++i) x[i] = y[i];
    return;
  }
  const S denom = S(1.0) + y[0];
  for (int i = 0; i < m; ++i) x[i] = 2.0 * y[i + 1] / denom;
}

AmbientPoint embedding_chart_convert(const AmbientSpace& space, const Vec& y, double t);
/// Inverse: y_i = x_i F, y0 = (1 - (c/4)|x|^2) F.
Vec chart_embedding_convert(const AmbientSpace& space, const AmbientPoint& p);

/// Unit vector of S^{n-1} from n-1 hyperspherical angles.
template <class S>
void sphere_point(int n, const S* angles, S* out) {
  using std::cos;
  using std::sin;
  S prod(1.0);
  for (int i = 0; i + 1 < n; ++i) {
    out[i] = prod * cos(angles[i]);
    prod = prod * sin(angles[i]);
  }
  out[n - 1] = prod;
}

/// Chart box for n-1 hyperspherical angles: polar angles in [0.6, 2.5], the
/// last (azimuthal) angle in [-1, 1].
void angle_box(int n_angles, ChartPoint& lo, ChartPoint& hi, int offset);

/// The closed-form entries the CLI lists.
std::vector<CatalogEntry> standard_entries();

}  // namespace lbh
