#pragma once

// Regular lattices over chart boxes. Flat storage is row-major: the last
// chart axis is contiguous.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lbh/immersion.hpp"

namespace lbh {

using LatticeIndex = std::array<int, kMaxChartDim>;

struct ChartGrid {
  int dim = 0;
  LatticeIndex n{};
  ChartPoint lo{};
  ChartPoint spacing{};
  int margin = 4;

  /// Lattice spanning the box with n[i] points per axis (n[i] >= 9, margin >= 2).
  static ChartGrid over(const ChartBox& box, std::span<const int> n, int margin);
  static ChartGrid over(const ChartBox& box, int n, int margin);
  /// (2r+1)^dim lattice centered at x with spacing h on every axis.
  static ChartGrid patch(const ChartPoint& x, int dim, int radius, double h);

  std::size_t size() const;
  std::ptrdiff_t stride(int axis) const {
    std::ptrdiff_t s = 1;
    for (int i = dim - 1; i > axis; --i) s *= n[i];
    return s;
  }
  LatticeIndex unflatten(std::size_t flat) const {
    LatticeIndex idx{};
    for (int i = dim - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(flat % n[i]);
      flat /= n[i];
    }
    return idx;
  }
  std::size_t flatten(const LatticeIndex& idx) const {
    std::size_t flat = 0;
    for (int i = 0; i < dim; ++i) flat = flat * n[i] + idx[i];
    return flat;
  }
  ChartPoint coords(std::size_t flat) const {
    const LatticeIndex idx = unflatten(flat);
    ChartPoint x{};
    for (int i = 0; i < dim; ++i) x[i] = lo[i] + idx[i] * spacing[i];
    return x;
  }
  ChartBox box() const;
  /// Every axis index lies in [k, n - 1 - k].
  bool interior(std::size_t flat, int k) const {
    for (int i = dim - 1; i >= 0; --i) {
      const int idx = static_cast<int>(flat % n[i]);
      if (idx < k || idx > n[i] - 1 - k) return false;
      flat /= n[i];
    }
    return true;
  }
  std::vector<std::size_t> interior_points(int k) const;
  std::size_t center() const;
};

struct ScalarField {
  ChartGrid grid;
  std::vector<double> values;
  std::string name;

  ScalarField() = default;
  ScalarField(ChartGrid g, std::string field_name);
  ScalarField(ChartGrid g, std::vector<double> v, std::string field_name);

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  /// Throws if any value is NaN or infinite.
  void require_finite() const;
};

}  // namespace lbh
