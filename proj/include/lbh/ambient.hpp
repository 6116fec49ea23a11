#pragma once

// The product space L^m(c) x R in conformal coordinates.
//
// Coordinates are (x^1, ..., x^m, t) with metric F(x)^2 |dx|^2 + dt^2 and
// F(x) = 1 / (1 + (c/4)|x|^2). The t axis is always the last ambient index.

#include <array>

#include "lbh/types.hpp"

namespace lbh {

struct AmbientSpace {
  int c = 0;        ///< sectional curvature of the base, one of -1, 0, 1
  int m = 2;        ///< base dimension (= hypersurface dimension)
  double mu = 0.0;  ///< Einstein constant of the base, c (m - 1)

  /// Constant-curvature base with mu = c (m - 1). Throws ParameterError.
  static AmbientSpace space_form(int c, int m);

  int dim() const { return m + 1; }
  int t_index() const { return m; }
};

struct AmbientPoint {
  Vec base;  ///< conformal chart coordinates of the base point
  double t = 0.0;
};

/// Conformal factor F at a base point; throws DomainError outside the chart.
double conformal_factor(const AmbientSpace& space, const Vec& base);

/// True when base lies in the chart domain (|x|^2 < 4 for c = -1).
bool in_chart(const AmbientSpace& space, const Vec& base);

Mat metric_at(const AmbientSpace& space, const AmbientPoint& p);

double inner(const AmbientSpace& space, const AmbientPoint& p, const Vec& a, const Vec& b);

/// Christoffel symbols Gamma^a_{bc} of the ambient metric at one point.
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  double operator()(int a, int b, int c) const { return data_[(a * kMaxAmbientDim + b) * kMaxAmbientDim + c]; }
  double& operator()(int a, int b, int c) { return data_[(a * kMaxAmbientDim + b) * kMaxAmbientDim + c]; }

  /// Gamma^a_{bc} u^b v^c.
  Vec contract(const Vec& u, const Vec& v) const;

  /// Marks the symbols as those of e^{2 phi} delta on the base with a flat
  /// last axis, which lets contract() skip the triple loop.
  void set_conformal(int m, const std::array<double, kMaxChartDim>& dphi) {
    conformal_m_ = m;
    dphi_ = dphi;
  }

 private:
  int dim_;
  int conformal_m_ = 0;
  std::array<double, kMaxChartDim> dphi_{};
  std::array<double, kMaxAmbientDim * kMaxAmbientDim * kMaxAmbientDim> data_{};
};

/// Closed-form Christoffel symbols of the conformal product metric.
Christoffel christoffel_at(const AmbientSpace& space, const AmbientPoint& p);

/// R(X,Y)Z from the six-term formula for L^m(c) x R.
Vec curvature_op(const AmbientSpace& space, const AmbientPoint& p, const Vec& x, const Vec& y,
                 const Vec& z);

/// Ric(xi, xi) = mu (1 - theta^2) for a unit normal making cos(alpha) = theta.
double ricci_normal_scalar(const AmbientSpace& space, double theta);

/// Coefficient k in (Ric(xi))^T = k T, namely -mu theta.
double ricci_normal_tangential_coefficient(const AmbientSpace& space, double theta);

/// Scalar curvature c m (m - 1) of the product.
double ambient_scalar_curvature(const AmbientSpace& space);

/// Coordinate vector of d/dt.
Vec vertical(const AmbientSpace& space);

}  // namespace lbh
