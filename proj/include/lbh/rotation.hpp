#pragma once

// Rotation hypersurfaces of S^m x R and H^m x R: profile curves
// s -> (cos s, sin s e, h(s)) (cosh, sinh for c = -1), their principal
// curvatures, the reduced lambda-biharmonic ODE and the umbilic chain.

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "lbh/immersion.hpp"

namespace lbh {

/// h and its first three derivatives in s.
struct ProfileJet {
  double h = 0.0, dh = 0.0, d2h = 0.0, d3h = 0.0;
};

/// Bound on |cot s| (|coth s| for c = -1) inside a profile domain.
inline constexpr double kCotBound = 1e6;
/// |h'| beyond which integration reports blow-up.
inline constexpr double kSlopeBound = 1e6;

class RotationProfile {
 public:
  using Function = std::function<ProfileJet(double)>;

  /// Throws ParameterError unless c = +-1 and [s0, s1] stays inside the
  /// region where |cot s| (|coth s|) <= kCotBound.
  RotationProfile(AmbientSpace space, Function h, double s0, double s1);

  const AmbientSpace& space() const { return space_; }
  double s0() const { return s0_; }
  double s1() const { return s1_; }
  /// Throws DomainError outside [s0, s1].
  ProfileJet eval(double s) const;

 private:
  AmbientSpace space_;
  std::shared_ptr<const Function> h_;
  double s0_ = 0.0, s1_ = 0.0;
};

/// cot s for c = 1, coth s for c = -1, and its derivative.
std::pair<double, double> orbit_cot(int c, double s);

/// (lambda1, lambda2) = (-h''/W^3, -h' cot s / W), W = sqrt(1 + h'^2);
/// lambda2 has multiplicity m - 1. These are the principal curvatures for the
/// normal with t-component -1/W.
std::pair<double, double> rotation_principal_curvatures(const RotationProfile& profile, double s);

/// Angle data with tan(alpha) = h', alpha' = h''/(1 + h'^2), mean curvature
/// and its s-derivative.
struct ProfileState {
  double s = 0.0;
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double H = 0.0;
  double H_prime = 0.0;
};

ProfileState profile_state(const RotationProfile& profile, double s);

/// (m/2 H - alpha' cos alpha) H' - c(m-1) sin alpha H.
double ode_5_2_residual(const ProfileState& st, const AmbientSpace& space);
double ode_5_2_residual(const RotationProfile& profile, double s);

/// Chart (s, v_1..v_{m-1}) with s in the profile domain and hyperspherical
/// angles v. Oriented so that frame_at reproduces rotation_principal_curvatures.
Immersion rotation_immersion(const RotationProfile& profile);

struct IntegratedProfile {
  RotationProfile profile;
  std::vector<double> s;
  std::vector<double> h;
  std::vector<double> dh;
};

/// RK4 on (h, h') for h'' = -(m-1) h' cot s (1 + h'^2), fixed step (the last
/// step is shortened to land on s1). Samples are joined by quintic Hermite
/// pieces carrying h, h', h''; the third derivative is the derivative of the
/// equation along them. Throws DomainError on blow-up or a singular
/// endpoint.
IntegratedProfile minimal_profile_integrate(const AmbientSpace& space, double h0,
                                            double dh0, double s0, double s1, double step);

struct SemiParallelReport {
  double C = 0.0;
  int m = 0;
  int samples = 0;
  double identity_max = 0.0;   ///< max |u u' cot s - (u^2 - 1)|
  double residual_min = 0.0;   ///< min |ODE residual| over the sweep
  double residual_max = 0.0;
  double s_at_min = 0.0;
};

/// u = sqrt(1 + C sec^2 s) with sin(alpha) = -u, evaluated on `samples`
/// equally spaced points of [s0, s1] in S^m x R.
SemiParallelReport semi_parallel_candidate_check(double C, double s0, double s1, int m,
                                                 int samples = 1000);

/// ODE residual of the candidate at one s.
double semi_parallel_residual(double C, double s, int m);

struct UmbilicReport {
  int m = 0;
  int c = 0;
  int steps = 0;
  double max_discrepancy = 0.0;  ///< |d/dr L - closed form| over the trajectory
  double min_derivative = 0.0;   ///< min |d/dr L|
  double max_derivative = 0.0;
  bool degenerate = false;       ///< sin(alpha) cos(alpha) vanished on the trajectory
  double alpha_end = 0.0;
};

/// 4m^2 + 3m - 4.
long long umbilic_coefficient(long long m);

/// alpha'' = -(c/2) sin(2 alpha) in the e_1 arclength r on [0, length] with
/// step `step`; compares a central difference of
/// L = 2c(m-1)/(m+2) cos 2a + 2c(m-1)^2/(m+2) cos^2 a - c(m-1) sin^2 a + m a'^2
/// with -2c a' sin a cos a (4m^2 + 3m - 4)/(m + 2).
UmbilicReport umbilic_chain_check(int m, int c, double alpha0, double dalpha0, double length,
                                  double step);

/// True iff 4m^2 + 3m - 4 > 0 for 1 <= m <= m_max and the quadratic has no
/// positive integer root.
bool coefficient_positivity(long long m_max);

/// CSV trace with header s,h,h_prime,alpha,H,lambda1,lambda2,ode_5_2_residual.
void write_profile_trace(std::ostream& out, const RotationProfile& profile, int samples);

}  // namespace lbh
