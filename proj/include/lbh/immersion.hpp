#pragma once

// Hypersurface charts into L^m(c) x R and their pointwise extrinsic geometry.

#include <array>
#include <functional>
#include <memory>
#include <span>

#include "lbh/ambient.hpp"
#include "lbh/jet.hpp"

namespace lbh {

using ChartPoint = std::array<double, kMaxChartDim>;

/// Axis-aligned box in chart coordinates.
struct ChartBox {
  int dim = 0;
  ChartPoint lo{};
  ChartPoint hi{};

  static ChartBox cube(int dim, double lo, double hi);
  ChartPoint center() const;
  bool contains(std::span<const double> x) const;
};

/// Ambient coordinates (x^1..x^m, t) as order-2 jets in the chart variables.
struct AmbientJet {
  int dim = 0;
  std::array<Jet2, kMaxAmbientDim> comp{};
};

using ChartMap = std::function<AmbientJet(std::span<const Jet2>)>;

/// Smooth chart map from a box in R^m into the ambient product.
///
/// The unit normal is the raised cofactor vector of the tangent frame, which
/// is continuous over the chart. Its global sign is fixed once, at a reference
/// point (the box center unless given): the first component in the order
/// t, x^1, ..., x^m that is nonzero is made positive. flipped() reverses it.
class Immersion {
 public:
  Immersion(AmbientSpace space, ChartBox domain, ChartMap map);
  Immersion(AmbientSpace space, ChartBox domain, ChartMap map, const ChartPoint& reference);

  const AmbientSpace& space() const { return space_; }
  const ChartBox& domain() const { return domain_; }
  int chart_dim() const { return space_.m; }
  double orientation() const { return orientation_; }
  const ChartPoint& reference() const { return reference_; }

  AmbientJet jets(std::span<const double> x) const;
  AmbientPoint point(std::span<const double> x) const;

  Immersion flipped() const;

  /// Same surface in chart y with old chart x = P y + q, over new_domain.
  Immersion reparametrized(const Mat& P, const Vec& q, const ChartBox& new_domain) const;

 private:
  AmbientSpace space_;
  ChartBox domain_;
  std::shared_ptr<const ChartMap> map_;
  ChartPoint reference_{};
  double orientation_ = 1.0;
};

/// Extrinsic data at one chart point. Index conventions: chart indices
/// i, j in [0, m); ambient indices in [0, m] with t last.
struct GeometryFrame {
  AmbientPoint point;
  Mat tangent;   ///< (m+1) x m, columns d_i phi
  Mat g;         ///< induced metric
  Mat g_inv;
  Mat b;         ///< b_ij = <nabla_i d_j phi, xi>
  Mat A;         ///< shape operator g^{-1} b, A(i, j) = A^i_j
  double H = 0;  ///< trace(A) / m
  double A2 = 0; ///< |A|^2
  Vec kappa;     ///< principal curvatures, ascending
  double theta = 0;
  Vec T;         ///< tangential part of d/dt, contravariant chart components
  Vec xi;        ///< unit normal, ambient coordinate components
};

/// Determinant threshold below which the differential counts as singular.
inline constexpr double kMinMetricDeterminant = 1e-10;

/// With principal = false, kappa is left empty (skips the eigen solve).
GeometryFrame frame_at(const Immersion& imm, std::span<const double> x, bool principal = true);
GeometryFrame frame_at(const Immersion& imm, const ChartPoint& x, bool principal = true);

GeometryFrame normal_flip(const GeometryFrame& frame);

/// max_ij |b_ij - H g_ij|.
double umbilicity_defect(const GeometryFrame& frame);

}  // namespace lbh
