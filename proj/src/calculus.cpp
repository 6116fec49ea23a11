#include "lbh/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "lbh/kernels.hpp"

namespace lbh {
namespace {

void require_interior(const ChartGrid& grid, std::size_t p, int k) {
  if (p >= grid.size() || !grid.interior(p, k))
    throw StencilError("stencil at lattice point " + std::to_string(p) +
                       " needs an interior margin of " + std::to_string(k));
}

// Zero every point whose index along `axis` lies within k of the boundary.
void clear_axis_boundary(const ChartGrid& grid, Lattice& out, int axis, int k) {
  const auto s = static_cast<std::size_t>(grid.stride(axis));
  const auto na = static_cast<std::size_t>(grid.n[axis]);
  const auto kk = static_cast<std::size_t>(std::min(k, grid.n[axis]));
  // Blocks of na * s points; rows [0, k) and [na - k, na) of each block are boundary.
  for (std::size_t b = 0; b < out.size(); b += na * s) {
    std::fill_n(out.begin() + b, kk * s, 0.0);
    std::fill_n(out.begin() + b + (na - kk) * s, kk * s, 0.0);
  }
}

void clear_boundary(const ChartGrid& grid, Lattice& out, int k) {
  for (std::size_t p = 0; p < out.size(); ++p)
    if (!grid.interior(p, k)) out[p] = 0.0;
}

double d1(const double* c, std::ptrdiff_t s, double scale) {
  return ((c[-2 * s] - c[2 * s]) + 8.0 * (c[s] - c[-s])) * scale;
}

double d2(const double* c, std::ptrdiff_t s, double scale) {
  return ((16.0 * (c[-s] + c[s]) - (c[-2 * s] + c[2 * s])) - 30.0 * c[0]) * scale;
}

}  // namespace

Lattice partial(const ChartGrid& grid, std::span<const double> f, int axis) {
  Lattice out(f.size(), 0.0);
  const std::ptrdiff_t s = grid.stride(axis);
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (n > 4 * s)
    kernels::active().diff1(f.data() + 2 * s, out.data() + 2 * s,
                            static_cast<std::size_t>(n - 4 * s), s,
                            1.0 / (12.0 * grid.spacing[axis]));
  clear_axis_boundary(grid, out, axis, 2);
  return out;
}

Lattice partial2(const ChartGrid& grid, std::span<const double> f, int axis) {
  Lattice out(f.size(), 0.0);
  const std::ptrdiff_t s = grid.stride(axis);
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  const double h = grid.spacing[axis];
  if (n > 4 * s)
    kernels::active().diff2(f.data() + 2 * s, out.data() + 2 * s,
                            static_cast<std::size_t>(n - 4 * s), s, 1.0 / (12.0 * h * h));
  clear_axis_boundary(grid, out, axis, 2);
  return out;
}

Lattice mixed_partial(const ChartGrid& grid, std::span<const double> f, int i, int j) {
  const Lattice fi = partial(grid, f, i);
  return partial(grid, fi, j);
}

double partial_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int axis) {
  require_interior(grid, p, 2);
  return d1(f.data() + p, grid.stride(axis), 1.0 / (12.0 * grid.spacing[axis]));
}

double partial2_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int axis) {
  require_interior(grid, p, 2);
  const double h = grid.spacing[axis];
  return d2(f.data() + p, grid.stride(axis), 1.0 / (12.0 * h * h));
}

double mixed_partial_at(const ChartGrid& grid, std::span<const double> f, std::size_t p, int i,
                        int j) {
  require_interior(grid, p, 2);
  const std::ptrdiff_t sj = grid.stride(j);
  const std::ptrdiff_t si = grid.stride(i);
  const double scale_i = 1.0 / (12.0 * grid.spacing[i]);
  const double scale_j = 1.0 / (12.0 * grid.spacing[j]);
  double v[5];
  for (int k = -2; k <= 2; ++k) v[k + 2] = d1(f.data() + p + k * sj, si, scale_i);
  return d1(v + 2, 1, scale_j);
}

MetricField::MetricField(const ChartGrid& grid, std::vector<Lattice> g_sym)
    : grid_(grid), g_(std::move(g_sym)) {
  const int m = grid.dim;
  const std::size_t npts = grid.size();
  if (static_cast<int>(g_.size()) != sym_size(m)) throw ParameterError("metric lattice count");
  ginv_.assign(sym_size(m), Lattice(npts));
  sqrt_det_.assign(npts, 0.0);
  for (std::size_t p = 0; p < npts; ++p) {
    const Mat gp = metric(p);
    const double det = small_det(gp);
    if (!(det > 0.0)) throw DegenerateImmersion("metric lattice is not positive definite");
    const Mat inv = small_inverse(gp);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) ginv_[sym_index(i, j, m)][p] = inv(i, j);
    sqrt_det_[p] = std::sqrt(det);
  }

  drift_.assign(m, Lattice(npts, 0.0));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      Lattice w(npts);
      const Lattice& gij = ginv_[sym_index(i, j, m)];
      for (std::size_t p = 0; p < npts; ++p) w[p] = sqrt_det_[p] * gij[p];
      const Lattice dw = partial(grid, w, i);
      for (std::size_t p = 0; p < npts; ++p) drift_[j][p] += dw[p];
    }
    for (std::size_t p = 0; p < npts; ++p) drift_[j][p] /= sqrt_det_[p];
    clear_boundary(grid, drift_[j], 2);
  }

  // dg[k][sym(i,j)] = d_k g_ij
  std::vector<std::vector<Lattice>> dg(m);
  for (int k = 0; k < m; ++k)
    for (int s = 0; s < sym_size(m); ++s) dg[k].push_back(partial(grid, g_[s], k));
  gamma_.assign(m * sym_size(m), Lattice(npts, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = j; k < m; ++k) {
        Lattice& out = gamma_[i * sym_size(m) + sym_index(j, k, m)];
        for (int l = 0; l < m; ++l) {
          const Lattice& gil = ginv_[sym_index(i, l, m)];
          const Lattice& a = dg[j][sym_index(l, k, m)];
          const Lattice& b = dg[k][sym_index(l, j, m)];
          const Lattice& c = dg[l][sym_index(j, k, m)];
          for (std::size_t p = 0; p < npts; ++p) out[p] += 0.5 * gil[p] * (a[p] + b[p] - c[p]);
        }
        clear_boundary(grid, out, 2);
      }
}

MetricField MetricField::from_function(const ChartGrid& grid,
                                       const std::function<Mat(const ChartPoint&)>& metric) {
  const int m = grid.dim;
  std::vector<Lattice> g(sym_size(m), Lattice(grid.size()));
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Mat gp = metric(grid.coords(p));
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) g[sym_index(i, j, m)][p] = gp(i, j);
  }
  return MetricField(grid, std::move(g));
}

Mat MetricField::metric(std::size_t p) const {
  const int m = dim();
  Mat out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = g(p, i, j);
  return out;
}

Mat MetricField::inverse(std::size_t p) const {
  const int m = dim();
  Mat out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = g_inv(p, i, j);
  return out;
}

Vec grad(const ScalarField& f, std::size_t p, const MetricField& metric) {
  const int m = metric.dim();
  Vec df(m);
  for (int j = 0; j < m; ++j) df(j) = partial_at(f.grid, f.values, p, j);
  return metric.inverse(p) * df;
}

double laplace_beltrami(const ScalarField& f, std::size_t p, const MetricField& metric) {
  const ChartGrid& grid = f.grid;
  const int m = grid.dim;
  require_interior(grid, p, 2);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc = acc + metric.g_inv(p, i, i) * partial2_at(grid, f.values, p, i);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      acc = acc + (2.0 * metric.g_inv(p, i, j)) * mixed_partial_at(grid, f.values, p, i, j);
  for (int j = 0; j < m; ++j) acc = acc + metric.drift(p, j) * partial_at(grid, f.values, p, j);
  return acc;
}

ScalarField laplace_beltrami(const ScalarField& f, const MetricField& metric) {
  const ChartGrid& grid = f.grid;
  const int m = grid.dim;
  const std::size_t npts = grid.size();
  const auto& k = kernels::active();
  ScalarField out(grid, "lap(" + f.name + ")");
  for (int i = 0; i < m; ++i) {
    const Lattice d = partial2(grid, f.values, i);
    k.mul_add(out.values.data(), metric.g_inv_lattice(i, i).data(), d.data(), npts);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Lattice d = mixed_partial(grid, f.values, i, j);
      Lattice w = metric.g_inv_lattice(i, j);
      for (double& v : w) v = 2.0 * v;
      k.mul_add(out.values.data(), w.data(), d.data(), npts);
    }
  for (int j = 0; j < m; ++j) {
    const Lattice d = partial(grid, f.values, j);
    k.mul_add(out.values.data(), metric.drift_lattice(j).data(), d.data(), npts);
  }
  clear_boundary(grid, out.values, 2);
  return out;
}

double bilaplacian(const ScalarField& f, std::size_t p, const MetricField& metric) {
  require_interior(f.grid, p, 4);
  return laplace_beltrami(laplace_beltrami(f, metric), p, metric);
}

ScalarField bilaplacian(const ScalarField& f, const MetricField& metric) {
  ScalarField out = laplace_beltrami(laplace_beltrami(f, metric), metric);
  clear_boundary(f.grid, out.values, 4);
  out.name = "bilap(" + f.name + ")";
  return out;
}

}  // namespace lbh
