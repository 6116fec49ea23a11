#include "lbh/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace lbh {
namespace {

constexpr double kPriorityThreshold = 1e-8;

struct Differential {
  AmbientPoint point;
  Mat tangent;                                    // (m+1) x m
  std::array<Mat, kMaxChartDim> hess;             // hess[i](A, j) = d_i d_j phi^A
};

Differential differentiate(const AmbientSpace& space, const AmbientJet& jet) {
  const int m = space.m, n = space.dim();
  Differential d;
  d.point.base = Vec(m);
  for (int a = 0; a < m; ++a) d.point.base(a) = jet.comp[a].value();
  d.point.t = jet.comp[m].value();
  d.tangent = Mat(n, m);
  for (int i = 0; i < m; ++i) d.hess[i] = Mat(n, m);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i) {
      d.tangent(a, i) = jet.comp[a].d(i);
      for (int j = 0; j < m; ++j) d.hess[i](a, j) = jet.comp[a].dd(i, j);
    }
  return d;
}

// Raised, normalized cofactor normal; sign is the chart's natural one.
Vec cofactor_normal(const AmbientSpace& space, const Differential& d) {
  const int m = space.m, n = space.dim();
  Vec nu(n);
  for (int a = 0; a < n; ++a) {
    Mat minor(m, m);
    for (int r = 0, row = 0; r < n; ++r) {
      if (r == a) continue;
      minor.row(row++) = d.tangent.row(r);
    }
    const double sign = ((a + m) % 2 == 0) ? 1.0 : -1.0;
    nu(a) = sign * small_det(minor);
  }
  const double f = conformal_factor(space, d.point.base);
  Vec xi = nu;
  for (int a = 0; a < m; ++a) xi(a) /= f * f;
  const double norm2 = nu.dot(xi);
  if (!(norm2 > 0.0) || !std::isfinite(norm2))
    throw DegenerateImmersion("normal normalization failed");
  return xi / std::sqrt(norm2);
}

double priority_sign(const AmbientSpace& space, const Vec& xi) {
  if (std::abs(xi(space.t_index())) > kPriorityThreshold)
    return xi(space.t_index()) > 0 ? 1.0 : -1.0;
  for (int a = 0; a < space.m; ++a)
    if (std::abs(xi(a)) > kPriorityThreshold) return xi(a) > 0 ? 1.0 : -1.0;
  throw DegenerateImmersion("normal vanishes at the orientation reference point");
}

GeometryFrame assemble(const AmbientSpace& space, const Differential& d, double orientation,
                       bool principal) {
  const int m = space.m, n = space.dim();
  GeometryFrame fr;
  fr.point = d.point;
  fr.tangent = d.tangent;
  const Mat gamb = metric_at(space, d.point);
  fr.g = d.tangent.transpose() * gamb * d.tangent;
  const double det = small_det(fr.g);
  if (!(det > kMinMetricDeterminant))
    throw DegenerateImmersion("induced metric determinant " + std::to_string(det) +
                              " below threshold");
  fr.g_inv = small_inverse(fr.g);
  fr.xi = orientation * cofactor_normal(space, d);

  const Christoffel gamma = christoffel_at(space, d.point);
  const Vec xi_low = gamb * fr.xi;
  fr.b = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Vec acc = d.hess[i].col(j) + gamma.contract(d.tangent.col(i), d.tangent.col(j));
      fr.b(i, j) = fr.b(j, i) = acc.dot(xi_low);
    }
  fr.A = fr.g_inv * fr.b;
  fr.H = fr.A.trace() / m;
  fr.A2 = (fr.A * fr.A).trace();

  if (principal) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(fr.b, fr.g, Eigen::EigenvaluesOnly);
    fr.kappa = eig.eigenvalues();
    std::sort(fr.kappa.data(), fr.kappa.data() + m);
  }

  fr.theta = fr.xi(space.t_index());
  Vec dt_low(m);
  for (int j = 0; j < m; ++j) dt_low(j) = d.tangent(n - 1, j);
  fr.T = fr.g_inv * dt_low;
  return fr;
}

}  // namespace

ChartBox ChartBox::cube(int dim, double lo, double hi) {
  if (dim < 1 || dim > kMaxChartDim) throw ParameterError("chart dimension out of range");
  if (!(lo < hi)) throw ParameterError("empty chart box");
  ChartBox b;
  b.dim = dim;
  for (int i = 0; i < dim; ++i) {
    b.lo[i] = lo;
    b.hi[i] = hi;
  }
  return b;
}

ChartPoint ChartBox::center() const {
  ChartPoint c{};
  for (int i = 0; i < dim; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

bool ChartBox::contains(std::span<const double> x) const {
  for (int i = 0; i < dim; ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

Immersion::Immersion(AmbientSpace space, ChartBox domain, ChartMap map)
    : Immersion(space, domain, std::move(map), domain.center()) {}

Immersion::Immersion(AmbientSpace space, ChartBox domain, ChartMap map,
                     const ChartPoint& reference)
    : space_(space),
      domain_(domain),
      map_(std::make_shared<const ChartMap>(std::move(map))),
      reference_(reference) {
  if (domain_.dim != space_.m) throw ParameterError("chart box dimension must equal m");
  const Differential d = differentiate(space_, jets(reference_));
  orientation_ = priority_sign(space_, cofactor_normal(space_, d));
}

AmbientJet Immersion::jets(std::span<const double> x) const {
  std::array<Jet2, kMaxChartDim> vars{};
  for (int i = 0; i < space_.m; ++i) vars[i] = Jet2::variable(x[i], space_.m, i);
  AmbientJet out = (*map_)(std::span<const Jet2>(vars.data(), space_.m));
  if (out.dim != space_.dim()) throw ParameterError("chart map returned wrong ambient dimension");
  return out;
}

AmbientPoint Immersion::point(std::span<const double> x) const {
  const AmbientJet j = jets(x);
  AmbientPoint p;
  p.base = Vec(space_.m);
  for (int a = 0; a < space_.m; ++a) p.base(a) = j.comp[a].value();
  p.t = j.comp[space_.m].value();
  return p;
}

Immersion Immersion::flipped() const {
  Immersion out = *this;
  out.orientation_ = -orientation_;
  return out;
}

Immersion Immersion::reparametrized(const Mat& P, const Vec& q, const ChartBox& new_domain) const {
  const int m = space_.m;
  if (P.rows() != m || P.cols() != m || q.size() != m)
    throw ParameterError("affine reparametrization has wrong shape");
  auto inner_map = map_;
  ChartMap composed = [inner_map, P, q, m](std::span<const Jet2> y) {
    std::array<Jet2, kMaxChartDim> x{};
    for (int i = 0; i < m; ++i) {
      Jet2 xi(q(i));
      for (int j = 0; j < m; ++j) xi += P(i, j) * y[j];
      x[i] = xi;
    }
    return (*inner_map)(std::span<const Jet2>(x.data(), m));
  };
  Vec ref(m);
  for (int i = 0; i < m; ++i) ref(i) = reference_[i];
  const Vec yref = P.lu().solve(ref - q);
  ChartPoint new_ref{};
  for (int i = 0; i < m; ++i) new_ref[i] = yref(i);
  Immersion out(space_, new_domain, std::move(composed), new_ref);
  // Keep an explicit flip of this immersion attached to the new chart.
  const Differential d = differentiate(space_, jets(reference_));
  const double natural = priority_sign(space_, cofactor_normal(space_, d));
  if (natural != orientation_) out.orientation_ = -out.orientation_;
  return out;
}

GeometryFrame frame_at(const Immersion& imm, std::span<const double> x, bool principal) {
  const Differential d = differentiate(imm.space(), imm.jets(x));
  return assemble(imm.space(), d, imm.orientation(), principal);
}

GeometryFrame frame_at(const Immersion& imm, const ChartPoint& x, bool principal) {
  return frame_at(imm, std::span<const double>(x.data(), imm.chart_dim()), principal);
}

GeometryFrame normal_flip(const GeometryFrame& frame) {
  GeometryFrame out = frame;
  out.xi = -frame.xi;
  out.b = -frame.b;
  out.A = -frame.A;
  out.H = -frame.H;
  out.theta = -frame.theta;
  out.kappa = -frame.kappa;
  std::sort(out.kappa.data(), out.kappa.data() + out.kappa.size());
  return out;
}

double umbilicity_defect(const GeometryFrame& frame) {
  return (frame.b - frame.H * frame.g).cwiseAbs().maxCoeff();
}

}  // namespace lbh
