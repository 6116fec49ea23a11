#include "lbh/sample.hpp"

#include <cmath>

#include "lbh/parallel.hpp"

namespace lbh {
namespace {

// Position of the strictly upper pair (i < j) in lexicographic order.
int pair_index(int i, int j, int m) { return i * m - i * (i + 1) / 2 + (j - i - 1); }

// Base-projected Gram matrix of (d_1 phi, ..., d_m phi, xi). On a space-form
// base <R(X,Y)Z,W> = c(<Y,Z>_b <X,W>_b - <X,Z>_b <Y,W>_b), so every curvature
// term the sample needs is a polynomial in these entries.
Mat base_gram(const AmbientSpace& space, const GeometryFrame& fr) {
  const int m = space.m;
  Mat v(m, m + 1);
  v.leftCols(m) = fr.tangent.topRows(m);
  v.col(m) = fr.xi.head(m);
  const double f = conformal_factor(space, fr.point.base);
  return (f * f) * (v.transpose() * v);
}

// sum_{ijkl} g^{ik} g^{jl} <R(E_i, E_j) E_l, E_k> = c((tr B)^2 - tr(B^2)), B = g^{-1} G_b.
double tangential_curvature_of(const AmbientSpace& space, const GeometryFrame& fr,
                               const Mat& gram) {
  const int m = space.m;
  const Mat b = fr.g_inv * gram.topLeftCorner(m, m);
  const double tr = b.trace();
  return space.c * (tr * tr - (b * b).trace());
}

}  // namespace

SurfaceSample::SurfaceSample(const Immersion& imm, const ChartGrid& grid, int jobs)
    : height(grid, "h"),
      mean(grid, "H"),
      theta(grid, "theta"),
      shape_norm(grid, "A2"),
      ricci_normal(grid, "ric_xi_xi"),
      umbilicity(grid, "umbilicity"),
      tangential_curvature(grid, "tangential_curvature"),
      imm_(imm),
      grid_(grid) {
  const int m = grid.dim;
  if (m != imm.chart_dim()) throw ParameterError("grid dimension differs from chart dimension");
  const std::size_t npts = grid.size();
  const int npairs = m * (m - 1) / 2;
  std::vector<Lattice> g(sym_size(m), Lattice(npts));
  b_.assign(sym_size(m), Lattice(npts));
  A_.assign(m * m, Lattice(npts));
  codazzi_.assign(npairs * m, Lattice(npts));
  for (int i = 0; i < m; ++i) T_.emplace_back(grid, "T" + std::to_string(i));

  const AmbientSpace& space = imm.space();
  parallel_for(npts, jobs, [&](std::size_t p) {
    const GeometryFrame fr = frame_at(imm, grid.coords(p), false);
    height[p] = fr.point.t;
    mean[p] = fr.H;
    theta[p] = fr.theta;
    shape_norm[p] = fr.A2;
    ricci_normal[p] = ricci_normal_scalar(space, fr.theta);
    umbilicity[p] = umbilicity_defect(fr);
    const Mat gram = space.c != 0 ? base_gram(space, fr) : Mat();
    tangential_curvature[p] = space.c != 0 ? tangential_curvature_of(space, fr, gram) : 0.0;
    for (int i = 0; i < m; ++i) {
      T_[i][p] = fr.T(i);
      for (int j = 0; j < m; ++j) A_[i * m + j][p] = fr.A(i, j);
      for (int j = i; j < m; ++j) {
        g[sym_index(i, j, m)][p] = fr.g(i, j);
        b_[sym_index(i, j, m)][p] = fr.b(i, j);
      }
    }
    if (space.c != 0) {
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int k = 0; k < m; ++k)
            codazzi_[pair_index(i, j, m) * m + k][p] =
                space.c * (gram(j, k) * gram(i, m) - gram(i, k) * gram(j, m));
    }
  });
  metric_ = MetricField(grid, std::move(g));
}

GeometryFrame SurfaceSample::frame(std::size_t p) const { return frame_at(imm_, grid_.coords(p)); }

double SurfaceSample::codazzi_ambient(std::size_t p, int i, int j, int k) const {
  if (i == j) return 0.0;
  const int m = dim();
  if (i < j) return codazzi_[pair_index(i, j, m) * m + k][p];
  return -codazzi_[pair_index(j, i, m) * m + k][p];
}

Vec covariant_derivative_T(const SurfaceSample& s, std::size_t p, int direction) {
  const int m = s.dim();
  const MetricField& g = s.metric();
  Vec out(m);
  for (int i = 0; i < m; ++i) {
    double v = partial_at(s.grid(), s.T_components()[i].values, p, direction);
    for (int j = 0; j < m; ++j) v += g.christoffel(p, i, direction, j) * s.T(p, j);
    out(i) = v;
  }
  return out;
}

Vec covariant_derivative_T(const Immersion& imm, const ChartPoint& x, int direction, double h) {
  const ChartGrid patch = ChartGrid::patch(x, imm.chart_dim(), 2, h);
  const SurfaceSample s(imm, patch);
  return covariant_derivative_T(s, patch.center(), direction);
}

double covariant_b(const SurfaceSample& s, std::size_t p, int i, int j, int k) {
  const int m = s.dim();
  const MetricField& g = s.metric();
  double v = partial_at(s.grid(), s.b_lattice(j, k), p, i);
  for (int l = 0; l < m; ++l)
    v -= g.christoffel(p, l, i, j) * s.b(p, l, k) + g.christoffel(p, l, i, k) * s.b(p, j, l);
  return v;
}

double codazzi_residual(const SurfaceSample& s, std::size_t p, int x, int y, int z) {
  return std::abs(covariant_b(s, p, x, y, z) - covariant_b(s, p, y, x, z) -
                  s.codazzi_ambient(p, x, y, z));
}

double codazzi_residual(const Immersion& imm, const ChartPoint& x, int dx, int dy, int dz,
                        double h) {
  const ChartGrid patch = ChartGrid::patch(x, imm.chart_dim(), 2, h);
  const SurfaceSample s(imm, patch);
  return codazzi_residual(s, patch.center(), dx, dy, dz);
}

}  // namespace lbh
