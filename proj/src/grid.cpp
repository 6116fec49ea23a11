#include "lbh/grid.hpp"

#include <cmath>

namespace lbh {

ChartGrid ChartGrid::over(const ChartBox& box, std::span<const int> n, int margin) {
  if (static_cast<int>(n.size()) != box.dim) throw ParameterError("resolution rank mismatch");
  if (margin < 2) throw ParameterError("grid margin must be at least 2");
  ChartGrid g;
  g.dim = box.dim;
  g.margin = margin;
  for (int i = 0; i < box.dim; ++i) {
    if (n[i] < 9) throw ParameterError("grid resolution must be at least 9 per axis");
    if (n[i] <= 2 * margin) throw ParameterError("grid has no interior at this margin");
    g.n[i] = n[i];
    g.lo[i] = box.lo[i];
    g.spacing[i] = (box.hi[i] - box.lo[i]) / (n[i] - 1);
  }
  return g;
}

ChartGrid ChartGrid::over(const ChartBox& box, int n, int margin) {
  std::array<int, kMaxChartDim> res{};
  res.fill(n);
  return over(box, std::span<const int>(res.data(), box.dim), margin);
}

ChartGrid ChartGrid::patch(const ChartPoint& x, int dim, int radius, double h) {
  if (!(h > 0.0)) throw ParameterError("patch spacing must be positive");
  ChartGrid g;
  g.dim = dim;
  g.margin = radius;
  for (int i = 0; i < dim; ++i) {
    g.n[i] = 2 * radius + 1;
    g.spacing[i] = h;
    g.lo[i] = x[i] - radius * h;
  }
  return g;
}

std::size_t ChartGrid::size() const {
  std::size_t s = 1;
  for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(n[i]);
  return s;
}

ChartBox ChartGrid::box() const {
  ChartBox b;
  b.dim = dim;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = lo[i];
    b.hi[i] = lo[i] + (n[i] - 1) * spacing[i];
  }
  return b;
}

std::vector<std::size_t> ChartGrid::interior_points(int k) const {
  std::vector<std::size_t> out;
  for (int i = 0; i < dim; ++i)
    if (n[i] - 1 - k < k) return out;
  // Odometer over the interior index box.
  LatticeIndex idx{};
  for (int i = 0; i < dim; ++i) idx[i] = k;
  while (true) {
    out.push_back(flatten(idx));
    int a = dim - 1;
    while (a >= 0 && ++idx[a] > n[a] - 1 - k) idx[a--] = k;
    if (a < 0) break;
  }
  return out;
}

std::size_t ChartGrid::center() const {
  LatticeIndex idx{};
  for (int i = 0; i < dim; ++i) idx[i] = n[i] / 2;
  return flatten(idx);
}

ScalarField::ScalarField(ChartGrid g, std::string field_name)
    : grid(g), values(g.size(), 0.0), name(std::move(field_name)) {}

ScalarField::ScalarField(ChartGrid g, std::vector<double> v, std::string field_name)
    : grid(g), values(std::move(v)), name(std::move(field_name)) {
  if (values.size() != grid.size()) throw ParameterError("field size does not match grid");
}

void ScalarField::require_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) throw StencilError("field '" + name + "' has non-finite values");
}

}  // namespace lbh
