#pragma once

// Order-2 truncated Taylor arithmetic in up to kMaxChartDim variables.
//
// A Jet2 carries f, grad f and Hess f at one point. Products drop every term
// of total order > 2, so chart maps built from these operations return exact
// first and second partial derivatives.

#include <algorithm>
#include <array>
#include <cmath>

#include "lbh/types.hpp"

namespace lbh {

class Jet2 {
 public:
  Jet2() = default;
  Jet2(double value) : v_(value) {}  // NOLINT: constants promote implicitly

  static Jet2 variable(double value, int dim, int index) {
    Jet2 j(value);
    j.dim_ = dim;
    j.g_[index] = 1.0;
    return j;
  }

  int dim() const { return dim_; }
  double value() const { return v_; }
  double d(int i) const { return g_[i]; }
  double dd(int i, int j) const { return h_[i * kMaxChartDim + j]; }

  Jet2& operator+=(const Jet2& o) {
    dim_ = std::max(dim_, o.dim_);
    v_ += o.v_;
    for (int i = 0; i < dim_; ++i) {
      g_[i] += o.g_[i];
      for (int j = 0; j < dim_; ++j) h_[idx(i, j)] += o.h_[idx(i, j)];
    }
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    dim_ = std::max(dim_, o.dim_);
    v_ -= o.v_;
    for (int i = 0; i < dim_; ++i) {
      g_[i] -= o.g_[i];
      for (int j = 0; j < dim_; ++j) h_[idx(i, j)] -= o.h_[idx(i, j)];
    }
    return *this;
  }
  Jet2& operator*=(double s) {
    v_ *= s;
    for (int i = 0; i < dim_; ++i) {
      g_[i] *= s;
      for (int j = 0; j < dim_; ++j) h_[idx(i, j)] *= s;
    }
    return *this;
  }

  friend Jet2 operator-(Jet2 a) {
    a *= -1.0;
    return a;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s) { return a *= (1.0 / s); }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v_ * b.v_);
    r.dim_ = std::max(a.dim_, b.dim_);
    for (int i = 0; i < r.dim_; ++i) {
      r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
      for (int j = 0; j < r.dim_; ++j) {
        r.h_[idx(i, j)] = a.v_ * b.h_[idx(i, j)] + b.v_ * a.h_[idx(i, j)] +
                          a.g_[i] * b.g_[j] + b.g_[i] * a.g_[j];
      }
    }
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

  /// Chain rule: f(x) given f, f', f'' at x.value().
  friend Jet2 compose(const Jet2& x, double f0, double f1, double f2) {
    Jet2 r(f0);
    r.dim_ = x.dim_;
    for (int i = 0; i < r.dim_; ++i) {
      r.g_[i] = f1 * x.g_[i];
      for (int j = 0; j < r.dim_; ++j)
        r.h_[idx(i, j)] = f1 * x.h_[idx(i, j)] + f2 * x.g_[i] * x.g_[j];
    }
    return r;
  }

  friend Jet2 reciprocal(const Jet2& x) {
    const double inv = 1.0 / x.v_;
    return compose(x, inv, -inv * inv, 2.0 * inv * inv * inv);
  }

 private:
  static constexpr int idx(int i, int j) { return i * kMaxChartDim + j; }

  int dim_ = 0;
  double v_ = 0.0;
  std::array<double, kMaxChartDim> g_{};
  std::array<double, kMaxChartDim * kMaxChartDim> h_{};
};

inline Jet2 sin(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return compose(x, s, c, -s);
}
inline Jet2 cos(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return compose(x, c, -s, -c);
}
inline Jet2 tan(const Jet2& x) {
  const double t = std::tan(x.value());
  const double sec2 = 1.0 + t * t;
  return compose(x, t, sec2, 2.0 * t * sec2);
}
inline Jet2 exp(const Jet2& x) {
  const double e = std::exp(x.value());
  return compose(x, e, e, e);
}
inline Jet2 log(const Jet2& x) {
  const double v = x.value();
  return compose(x, std::log(v), 1.0 / v, -1.0 / (v * v));
}
inline Jet2 sqrt(const Jet2& x) {
  const double r = std::sqrt(x.value());
  return compose(x, r, 0.5 / r, -0.25 / (r * x.value()));
}
inline Jet2 sinh(const Jet2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return compose(x, s, c, s);
}
inline Jet2 cosh(const Jet2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return compose(x, c, s, c);
}
inline Jet2 tanh(const Jet2& x) {
  const double t = std::tanh(x.value());
  const double sech2 = 1.0 - t * t;
  return compose(x, t, sech2, -2.0 * t * sech2);
}
inline Jet2 atan(const Jet2& x) {
  const double v = x.value();
  const double q = 1.0 / (1.0 + v * v);
  return compose(x, std::atan(v), q, -2.0 * v * q * q);
}
inline Jet2 pow(const Jet2& x, double p) {
  const double v = x.value();
  return compose(x, std::pow(v, p), p * std::pow(v, p - 1.0),
                 p * (p - 1.0) * std::pow(v, p - 2.0));
}

}  // namespace lbh
