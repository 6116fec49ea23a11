#include "lbh/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "lbh/catalog.hpp"

namespace lbh {
namespace {

double slope_w(double dh) { return std::sqrt(1.0 + dh * dh); }

// Quintic Hermite piece through (p, p', p'') at both ends of [0, w].
struct Quintic {
  double c[6];

  Quintic(double w, double p0, double d0, double a0, double p1, double d1, double a1) {
    const double A = p1 - (p0 + d0 * w + 0.5 * a0 * w * w);
    const double B = d1 - (d0 + a0 * w);
    const double C = a1 - a0;
    const double w2 = w * w, w3 = w2 * w;
    c[0] = p0;
    c[1] = d0;
    c[2] = 0.5 * a0;
    c[3] = (20.0 * A - 8.0 * B * w + C * w2) / (2.0 * w3);
    c[4] = (-30.0 * A + 14.0 * B * w - 2.0 * C * w2) / (2.0 * w3 * w);
    c[5] = (12.0 * A - 6.0 * B * w + C * w2) / (2.0 * w3 * w2);
  }

  ProfileJet at(double t) const {
    ProfileJet j;
    j.h = c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
    j.dh = c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
    j.d2h = 2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
    j.d3h = 6.0 * c[3] + t * (24.0 * c[4] + t * 60.0 * c[5]);
    return j;
  }
};

struct Samples {
  std::vector<double> s, h, dh, d2h;

  ProfileJet at(double x) const {
    const auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t k = it == s.begin() ? 0 : std::size_t(it - s.begin()) - 1;
    if (k + 1 >= s.size()) k = s.size() - 2;
    const double w = s[k + 1] - s[k];
    const Quintic q(w, h[k], dh[k], d2h[k], h[k + 1], dh[k + 1], d2h[k + 1]);
    return q.at(x - s[k]);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::pair<double, double> orbit_cot(int c, double s) {
  if (c == 1) {
    const double sn = std::sin(s);
    return {std::cos(s) / sn, -1.0 / (sn * sn)};
  }
  if (c == -1) {
    const double sh = std::sinh(s);
    return {std::cosh(s) / sh, -1.0 / (sh * sh)};
  }
  throw ParameterError("rotation hypersurfaces need c = 1 or c = -1");
}

RotationProfile::RotationProfile(AmbientSpace space, Function h, double s0, double s1)
    : space_(space), h_(std::make_shared<const Function>(std::move(h))), s0_(s0), s1_(s1) {
  if (space_.c != 1 && space_.c != -1)
    throw ParameterError("rotation profile: c must be 1 or -1");
  if (!(s0 < s1) || !std::isfinite(s0) || !std::isfinite(s1))
    throw ParameterError("rotation profile: need finite s0 < s1");
  if (s0 <= 0.0 || (space_.c == 1 && s1 >= std::numbers::pi))
    throw ParameterError("rotation profile: domain leaves (0, pi)");
  for (double s : {s0, s1})
    if (std::abs(orbit_cot(space_.c, s).first) > kCotBound)
      throw ParameterError("rotation profile: endpoint " + num(s) + " is singular");
}

ProfileJet RotationProfile::eval(double s) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(s1_));
  if (!(s >= s0_ - tol && s <= s1_ + tol))
    throw DomainError("profile parameter " + num(s) + " outside [" + num(s0_) + ", " +
                      num(s1_) + "]");
  return (*h_)(s);
}

std::pair<double, double> rotation_principal_curvatures(const RotationProfile& profile,
                                                        double s) {
  const ProfileJet j = profile.eval(s);
  const double k = orbit_cot(profile.space().c, s).first;
  const double w = slope_w(j.dh);
  return {-j.d2h / (w * w * w), -j.dh * k / w};
}

ProfileState profile_state(const RotationProfile& profile, double s) {
  const ProfileJet j = profile.eval(s);
  const int m = profile.space().m;
  const auto [k, dk] = orbit_cot(profile.space().c, s);
  const double w = slope_w(j.dh);
  const double w3 = w * w * w, w5 = w3 * w * w;
  const double l1 = -j.d2h / w3;
  const double l2 = -j.dh * k / w;
  const double dl1 = -j.d3h / w3 + 3.0 * j.d2h * j.d2h * j.dh / w5;
  const double dl2 = -j.d2h * k / w - j.dh * dk / w + j.dh * j.dh * j.d2h * k / w3;
  ProfileState st;
  st.s = s;
  st.alpha = std::atan(j.dh);
  st.alpha_prime = j.d2h / (1.0 + j.dh * j.dh);
  st.H = (l1 + (m - 1) * l2) / m;
  st.H_prime = (dl1 + (m - 1) * dl2) / m;
  return st;
}

double ode_5_2_residual(const ProfileState& st, const AmbientSpace& space) {
  const int m = space.m;
  const double ca = std::cos(st.alpha), sa = std::sin(st.alpha);
  return (0.5 * m * st.H - st.alpha_prime * ca) * st.H_prime - space.c * (m - 1) * sa * st.H;
}

double ode_5_2_residual(const RotationProfile& profile, double s) {
  return ode_5_2_residual(profile_state(profile, s), profile.space());
}

Immersion rotation_immersion(const RotationProfile& profile) {
  const AmbientSpace space = profile.space();
  const int m = space.m, c = space.c;
  ChartBox box;
  box.dim = m;
  box.lo[0] = profile.s0();
  box.hi[0] = profile.s1();
  angle_box(m - 1, box.lo, box.hi, 1);
  ChartMap map = [profile, m, c](std::span<const Jet2> u) {
    const Jet2& s = u[0];
    std::array<Jet2, kMaxAmbientDim> dir{}, y{};
    sphere_point(m, u.data() + 1, dir.data());
    y[0] = c == 1 ? cos(s) : cosh(s);
    const Jet2 r = c == 1 ? sin(s) : sinh(s);
    for (int a = 0; a < m; ++a) y[a + 1] = r * dir[a];
    AmbientJet out;
    out.dim = m + 1;
    embedding_to_chart(c, m, y.data(), out.comp.data());
    const ProfileJet j = profile.eval(s.value());
    out.comp[m] = compose(s, j.h, j.dh, j.d2h);
    return out;
  };
  Immersion imm(space, box, std::move(map));
  // Match the closed-form curvatures: normal with t-component -1/W.
  if (frame_at(imm, box.center()).theta > 0.0) imm = imm.flipped();
  return imm;
}

IntegratedProfile minimal_profile_integrate(const AmbientSpace& space, double h0, double dh0,
                                            double s0, double s1, double step) {
  if (space.c != 1 && space.c != -1) throw ParameterError("minimal profile: c must be 1 or -1");
  if (!(step > 0.0) || !(s1 > s0)) throw ParameterError("minimal profile: need step > 0, s1 > s0");
  if (!std::isfinite(h0) || !std::isfinite(dh0))
    throw ParameterError("minimal profile: initial data must be finite");
  const int m = space.m, c = space.c;
  for (double s : {s0, s1}) {
    if (s <= 0.0 || (c == 1 && s >= std::numbers::pi) ||
        std::abs(orbit_cot(c, s).first) > kCotBound)
      throw DomainError("minimal profile: singular endpoint at s = " + num(s));
  }
  auto rhs = [m, c](double s, double dh) {
    return -(m - 1) * dh * orbit_cot(c, s).first * (1.0 + dh * dh);
  };

  auto data = std::make_shared<Samples>();
  double s = s0, h = h0, dh = dh0;
  auto push = [&] {
    data->s.push_back(s);
    data->h.push_back(h);
    data->dh.push_back(dh);
    data->d2h.push_back(rhs(s, dh));
  };
  push();
  const long n = std::max(1L, long(std::ceil((s1 - s0) / step - 1e-9)));
  for (long i = 0; i < n; ++i) {
    const double hs = (i + 1 == n) ? s1 - s : step;
    const double k1h = dh, k1d = rhs(s, dh);
    const double k2h = dh + 0.5 * hs * k1d, k2d = rhs(s + 0.5 * hs, k2h);
    const double k3h = dh + 0.5 * hs * k2d, k3d = rhs(s + 0.5 * hs, k3h);
    const double k4h = dh + hs * k3d, k4d = rhs(s + hs, k4h);
    h += hs / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    dh += hs / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    s = (i + 1 == n) ? s1 : s0 + (i + 1) * step;
    if (!std::isfinite(dh) || std::abs(dh) > kSlopeBound)
      throw DomainError("minimal profile: blow-up (|h'| > 1e6) near s = " + num(s));
    push();
  }
  // h, h', h'' come from the quintic pieces; h''' is the derivative of the
  // profile equation along them.
  RotationProfile profile(
      space,
      [data, m, c](double x) {
        ProfileJet j = data->at(x);
        const auto [k, dk] = orbit_cot(c, x);
        const double p2 = j.dh * j.dh;
        j.d3h = -(m - 1) * (j.dh * dk * (1.0 + p2) + k * (1.0 + 3.0 * p2) * j.d2h);
        return j;
      },
      s0, s1);
  return {std::move(profile), data->s, data->h, data->dh};
}

double semi_parallel_residual(double C, double s, int m) {
  const double sec = 1.0 / std::cos(s), sec2 = sec * sec, tn = std::tan(s);
  const double u2 = 1.0 + C * sec2;
  if (!(u2 > 0.0)) throw DomainError("semi-parallel candidate undefined: 1 + C sec^2 s <= 0");
  const double u = std::sqrt(u2);
  const double q = C * sec2 * tn;
  const double dq = C * (2.0 * sec2 * tn * tn + sec2 * sec2);
  const double du = q / u;
  const double d2u = (dq * u - q * du) / u2;
  const double cot = 1.0 / tn, csc2 = 1.0 + cot * cot;
  const double H = (du + (m - 1) * u * cot) / m;
  const double dH = (d2u + (m - 1) * (du * cot - u * csc2)) / m;
  // lambda1 = u', sin(alpha) = -u, c = 1.
  return (0.5 * m * H + du) * dH + (m - 1) * u * H;
}

SemiParallelReport semi_parallel_candidate_check(double C, double s0, double s1, int m,
                                                 int samples) {
  if (samples < 2 || !(s1 > s0) || s0 <= 0.0 || s1 >= std::numbers::pi / 2)
    throw ParameterError("semi-parallel sweep needs 0 < s0 < s1 < pi/2 and >= 2 samples");
  if (m < 2) throw ParameterError("semi-parallel sweep needs m >= 2");
  SemiParallelReport r;
  r.C = C;
  r.m = m;
  r.samples = samples;
  r.residual_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double s = s0 + (s1 - s0) * k / (samples - 1);
    const double sec2 = 1.0 / (std::cos(s) * std::cos(s));
    const double u2 = 1.0 + C * sec2;
    if (!(u2 > 0.0)) throw DomainError("semi-parallel candidate undefined at s = " + num(s));
    const double u = std::sqrt(u2);
    const double du = C * sec2 * std::tan(s) / u;
    r.identity_max = std::max(r.identity_max, std::abs(u * du / std::tan(s) - (u2 - 1.0)));
    const double res = std::abs(semi_parallel_residual(C, s, m));
    r.residual_max = std::max(r.residual_max, res);
    if (res < r.residual_min) {
      r.residual_min = res;
      r.s_at_min = s;
    }
  }
  return r;
}

long long umbilic_coefficient(long long m) { return 4 * m * m + 3 * m - 4; }

UmbilicReport umbilic_chain_check(int m, int c, double alpha0, double dalpha0, double length,
                                  double step) {
  if (m < 1 || (c != 1 && c != -1)) throw ParameterError("umbilic chain needs m >= 1, c = +-1");
  if (!(step > 0.0) || !(length > 0.0)) throw ParameterError("umbilic chain needs step, length > 0");
  const long n = long(std::llround(length / step));
  if (n < 8) throw ParameterError("umbilic chain needs at least 8 steps");
  const double mp2 = m + 2.0;
  auto L = [&](double a, double da) {
    const double ca = std::cos(a), sa = std::sin(a);
    return 2.0 * c * (m - 1) / mp2 * std::cos(2.0 * a) +
           2.0 * c * (m - 1) * (m - 1) / mp2 * ca * ca - c * (m - 1) * sa * sa + m * da * da;
  };
  auto acc = [c](double a) { return -0.5 * c * std::sin(2.0 * a); };

  std::vector<double> a(n + 1), da(n + 1);
  a[0] = alpha0;
  da[0] = dalpha0;
  for (long i = 0; i < n; ++i) {
    const double k1a = da[i], k1d = acc(a[i]);
    const double k2a = da[i] + 0.5 * step * k1d, k2d = acc(a[i] + 0.5 * step * k1a);
    const double k3a = da[i] + 0.5 * step * k2d, k3d = acc(a[i] + 0.5 * step * k2a);
    const double k4a = da[i] + step * k3d, k4d = acc(a[i] + step * k3a);
    a[i + 1] = a[i] + step / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    da[i + 1] = da[i] + step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  std::vector<double> lv(n + 1);
  for (long i = 0; i <= n; ++i) lv[i] = L(a[i], da[i]);

  UmbilicReport r;
  r.m = m;
  r.c = c;
  r.steps = int(n);
  r.alpha_end = a[n];
  r.min_derivative = std::numeric_limits<double>::infinity();
  const double coef = double(umbilic_coefficient(m)) / mp2;
  double prev_sc = std::sin(a[0]) * std::cos(a[0]);
  for (long i = 0; i <= n; ++i) {
    const double sc = std::sin(a[i]) * std::cos(a[i]);
    if (std::abs(sc) < 1e-12 || (i > 0 && (sc > 0.0) != (prev_sc > 0.0))) r.degenerate = true;
    prev_sc = sc;
    if (i < 2 || i > n - 2) continue;
    const double fd = ((lv[i - 2] - lv[i + 2]) + 8.0 * (lv[i + 1] - lv[i - 1])) / (12.0 * step);
    const double closed = -2.0 * c * da[i] * sc * coef;
    r.max_discrepancy = std::max(r.max_discrepancy, std::abs(fd - closed));
    r.min_derivative = std::min(r.min_derivative, std::abs(fd));
    r.max_derivative = std::max(r.max_derivative, std::abs(fd));
  }
  return r;
}

bool coefficient_positivity(long long m_max) {
  if (m_max < 1) throw ParameterError("coefficient_positivity needs m_max >= 1");
  for (long long m = 1; m <= m_max; ++m)
    if (umbilic_coefficient(m) <= 0) return false;
  // Positive root (-3 + sqrt(73))/8 lies in (0, 1): no positive integer root.
  const double root = (-3.0 + std::sqrt(73.0)) / 8.0;
  return root > 0.0 && root < 1.0;
}

void write_profile_trace(std::ostream& out, const RotationProfile& profile, int samples) {
  if (samples < 2) throw ParameterError("profile trace needs at least 2 samples");
  out << "s,h,h_prime,alpha,H,lambda1,lambda2,ode_5_2_residual\n";
  for (int k = 0; k < samples; ++k) {
    const double s = k + 1 == samples
                         ? profile.s1()
                         : profile.s0() + (profile.s1() - profile.s0()) * k / (samples - 1);
    const ProfileJet j = profile.eval(s);
    const ProfileState st = profile_state(profile, s);
    const auto [l1, l2] = rotation_principal_curvatures(profile, s);
    out << num(s) << ',' << num(j.h) << ',' << num(j.dh) << ',' << num(st.alpha) << ','
        << num(st.H) << ',' << num(l1) << ',' << num(l2) << ','
        << num(ode_5_2_residual(st, profile.space())) << '\n';
  }
}

}  // namespace lbh
