#pragma once

// Fourth-order finite-difference calculus on chart lattices.
//
// First and second derivatives use the 5-point central stencils, mixed
// derivatives nest two first-derivative stencils. The Laplace-Beltrami
// operator is evaluated in the expanded div-grad form
//   Lap f = g^{ij} d_i d_j f + V^j d_j f,   V^j = (1/sqrt g) d_i (sqrt g g^{ij}),
// which needs a margin of 2 lattice layers; the bilaplacian needs 4.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lbh/grid.hpp"

namespace lbh {

using Lattice = std::vector<double>;

/// Values are exact where the axis index lies in [2, n-3]; elsewhere zero.
Lattice partial(const ChartGrid& grid, std::span<const double> f, int axis);
Lattice partial2(const ChartGrid& grid, std::span<const double> f, int axis);
Lattice mixed_partial(const ChartGrid& grid, std::span<const double> f, int i, int j);

double partial_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int axis);
double partial2_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int axis);
double mixed_partial_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int i,
                        int j);

/// Position of the pair (i, j) in packed upper-triangular storage.
inline int sym_index(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  return i * dim - i * (i - 1) / 2 + (j - i);
}
inline int sym_size(int dim) { return dim * (dim + 1) / 2; }

/// Induced metric sampled on a lattice with the derived quantities the
/// stencil operators need.
class MetricField {
 public:
  MetricField() = default;
  /// g_sym holds sym_size(dim) lattices, ordered by sym_index.
  MetricField(const ChartGrid& grid, std::vector<Lattice> g_sym);
  static MetricField from_function(const ChartGrid& grid,
                                   const std::function<Mat(const ChartPoint&)>& metric);

  const ChartGrid& grid() const { return grid_; }
  int dim() const { return grid_.dim; }

  double g(std::size_t p, int i, int j) const { return g_[sym_index(i, j, dim())][p]; }
  double g_inv(std::size_t p, int i, int j) const { return ginv_[sym_index(i, j, dim())][p]; }
  double sqrt_det(std::size_t p) const { return sqrt_det_[p]; }
  /// V^j; valid at margin 2.
  double drift(std::size_t p, int j) const { return drift_[j][p]; }
  /// Gamma^i_{jk} of the induced metric from stencils of g; valid at margin 2.
  double christoffel(std::size_t p, int i, int j, int k) const {
    return gamma_[i * sym_size(dim()) + sym_index(j, k, dim())][p];
  }
  Mat metric(std::size_t p) const;
  Mat inverse(std::size_t p) const;

  const Lattice& g_inv_lattice(int i, int j) const { return ginv_[sym_index(i, j, dim())]; }
  const Lattice& drift_lattice(int j) const { return drift_[j]; }

 private:
  ChartGrid grid_;
  std::vector<Lattice> g_, ginv_, drift_, gamma_;
  Lattice sqrt_det_;
};

/// Contravariant gradient g^{ij} d_j f at an interior point (margin 2).
Vec grad(const ScalarField& f, std::size_t p, const MetricField& metric);
double laplace_beltrami(const ScalarField& f, std::size_t p, const MetricField& metric);
double bilaplacian(const ScalarField& f, std::size_t p, const MetricField& metric);

/// Whole-lattice versions. Valid at margin 2 and 4 respectively, zero elsewhere.
ScalarField laplace_beltrami(const ScalarField& f, const MetricField& metric);
ScalarField bilaplacian(const ScalarField& f, const MetricField& metric);

}  // namespace lbh
