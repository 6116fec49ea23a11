#include "lbh/ambient.hpp"

#include <cmath>
#include <string>

namespace lbh {
namespace {

// |theta| may exceed one by rounding; anything larger signals a broken frame.
constexpr double kThetaSlack = 1e-9;

void check_theta(double theta) {
  if (!(std::abs(theta) <= 1.0 + kThetaSlack))
    throw DomainError("angle function |theta| = " + std::to_string(std::abs(theta)) +
                      " exceeds 1");
}

}  // namespace

AmbientSpace AmbientSpace::space_form(int c, int m) {
  if (c < -1 || c > 1) throw ParameterError("curvature c must be -1, 0 or 1");
  if (m < 2 || m > kMaxChartDim)
    throw ParameterError("base dimension m must lie in [2, " + std::to_string(kMaxChartDim) + "]");
  return AmbientSpace{c, m, static_cast<double>(c * (m - 1))};
}

bool in_chart(const AmbientSpace& space, const Vec& base) {
  const double denom = 1.0 + 0.25 * space.c * base.squaredNorm();
  return std::isfinite(denom) && denom > 0.0;
}

double conformal_factor(const AmbientSpace& space, const Vec& base) {
  const double denom = 1.0 + 0.25 * space.c * base.squaredNorm();
  if (!(denom > 0.0))
    throw DomainError("point outside the conformal chart (|x|^2 = " +
                      std::to_string(base.squaredNorm()) + ")");
  return 1.0 / denom;
}

Mat metric_at(const AmbientSpace& space, const AmbientPoint& p) {
  const double f = conformal_factor(space, p.base);
  Mat g = Mat::Identity(space.dim(), space.dim());
  for (int i = 0; i < space.m; ++i) g(i, i) = f * f;
  return g;
}

double inner(const AmbientSpace& space, const AmbientPoint& p, const Vec& a, const Vec& b) {
  const double f = conformal_factor(space, p.base);
  double s = 0.0;
  for (int i = 0; i < space.m; ++i) s += a(i) * b(i);
  return f * f * s + a(space.m) * b(space.m);
}

Vec Christoffel::contract(const Vec& u, const Vec& v) const {
  Vec out = Vec::Zero(dim_);
  if (conformal_m_ > 0) {
    double pu = 0.0, pv = 0.0, uv = 0.0;
    for (int i = 0; i < conformal_m_; ++i) {
      pu += dphi_[i] * u(i);
      pv += dphi_[i] * v(i);
      uv += u(i) * v(i);
    }
    for (int k = 0; k < conformal_m_; ++k) out(k) = u(k) * pv + v(k) * pu - uv * dphi_[k];
    return out;
  }
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c) out(a) += (*this)(a, b, c) * u(b) * v(c);
  return out;
}

Christoffel christoffel_at(const AmbientSpace& space, const AmbientPoint& p) {
  // Conformal metric e^{2 phi} delta with phi = log F, d_i phi = -(c/2) x_i F:
  //   Gamma^k_ij = delta^k_i phi_j + delta^k_j phi_i - delta_ij phi_k.
  const double f = conformal_factor(space, p.base);
  Christoffel gamma(space.dim());
  const int m = space.m;
  std::array<double, kMaxChartDim> dphi{};
  for (int i = 0; i < m; ++i) dphi[i] = -0.5 * space.c * p.base(i) * f;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        if (k == i) v += dphi[j];
        if (k == j) v += dphi[i];
        if (i == j) v -= dphi[k];
        gamma(k, i, j) = v;
      }
  gamma.set_conformal(m, dphi);
  return gamma;
}

Vec curvature_op(const AmbientSpace& space, const AmbientPoint& p, const Vec& x, const Vec& y,
                 const Vec& z) {
  const int n = space.dim();
  if (space.c == 0) return Vec::Zero(n);
  const int t = space.t_index();
  const double yz = inner(space, p, y, z);
  const double xz = inner(space, p, x, z);
  const double xt = x(t), yt = y(t), zt = z(t);
  Vec r = (yz - yt * zt) * x + (xt * zt - xz) * y;
  r(t) += xz * yt - yz * xt;
  return space.c * r;
}

double ricci_normal_scalar(const AmbientSpace& space, double theta) {
  check_theta(theta);
  return space.mu * (1.0 - theta * theta);
}

double ricci_normal_tangential_coefficient(const AmbientSpace& space, double theta) {
  check_theta(theta);
  return -space.mu * theta;
}

double ambient_scalar_curvature(const AmbientSpace& space) {
  return static_cast<double>(space.c * space.m * (space.m - 1));
}

Vec vertical(const AmbientSpace& space) {
  Vec v = Vec::Zero(space.dim());
  v(space.t_index()) = 1.0;
  return v;
}

}  // namespace lbh
