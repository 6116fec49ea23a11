#pragma once

// Exact-jet geometry sampled over a chart lattice, plus the stencil-based
// tensor derivatives (nabla T, nabla B) built on it.

#include <vector>

#include "lbh/calculus.hpp"

namespace lbh {

/// Frame fields of an immersion on every lattice point.
class SurfaceSample {
 public:
  SurfaceSample(const Immersion& imm, const ChartGrid& grid, int jobs = 1);

  const Immersion& immersion() const { return imm_; }
  const AmbientSpace& space() const { return imm_.space(); }
  const ChartGrid& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  const MetricField& metric() const { return metric_; }

  /// Recomputes the full frame at a lattice point.
  GeometryFrame frame(std::size_t p) const;

  double b(std::size_t p, int i, int j) const { return b_[sym_index(i, j, dim())][p]; }
  double A(std::size_t p, int i, int j) const { return A_[i * dim() + j][p]; }
  double T(std::size_t p, int i) const { return T_[i].values[p]; }
  /// <R(d_i phi, d_j phi) d_k phi, xi>.
  double codazzi_ambient(std::size_t p, int i, int j, int k) const;

  ScalarField height;      ///< h = t o phi
  ScalarField mean;        ///< H
  ScalarField theta;       ///< <d/dt, xi>
  ScalarField shape_norm;  ///< |A|^2
  ScalarField ricci_normal;  ///< Ric(xi, xi) = mu (1 - theta^2)
  ScalarField umbilicity;  ///< max_ij |b_ij - H g_ij|
  ScalarField tangential_curvature;  ///< sum over tangent frame of <R(e_i,e_j)e_j,e_i>
  const std::vector<ScalarField>& T_components() const { return T_; }
  const Lattice& b_lattice(int i, int j) const { return b_[sym_index(i, j, dim())]; }

 private:
  Immersion imm_;
  ChartGrid grid_;
  std::vector<Lattice> b_, A_, codazzi_;
  std::vector<ScalarField> T_;
  MetricField metric_;
};

/// Patch spacing for the pointwise operators on an immersion.
inline constexpr double kPatchSpacing = 4e-3;

/// (nabla_{d_k} T)^i at an interior lattice point (margin 2).
Vec covariant_derivative_T(const SurfaceSample& s, std::size_t p, int direction);
Vec covariant_derivative_T(const Immersion& imm, const ChartPoint& x, int direction,
                           double h = kPatchSpacing);

/// (nabla_i b)_{jk}: covariant derivative of the second fundamental form.
double covariant_b(const SurfaceSample& s, std::size_t p, int i, int j, int k);

/// |(nabla_X B)(Y,Z) - (nabla_Y B)(X,Z) - <R(X,Y)Z, xi>| for coordinate directions.
double codazzi_residual(const SurfaceSample& s, std::size_t p, int x, int y, int z);
double codazzi_residual(const Immersion& imm, const ChartPoint& x, int dx, int dy, int dz,
                        double h = kPatchSpacing);

}  // namespace lbh
