#pragma once

// Pointwise residuals of the lambda-biharmonic system and of the identity
// chain a hypersurface of L^m(c) x R must satisfy, reduced to reports.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbh/sample.hpp"

namespace lbh {

/// Normal and tangential components of tau_2 - lambda tau (up to the factor m).
struct LambdaResidual {
  double normal = 0.0;
  Vec tangent;               ///< contravariant chart components
  double tangent_norm = 0.0; ///< g-norm of tangent
  double lambda = 0.0;
};

/// Space-form form: Delta H - H(|A|^2 - c(m-1) sin^2 a + lambda) and
/// A(grad H) + (m/2) H grad H + c(m-1) cos a H T.
LambdaResidual lambda_residual_spaceform(const SurfaceSample& s, std::size_t p, double lambda);
LambdaResidual lambda_residual_spaceform(const Immersion& imm, const ChartPoint& x, double lambda,
                                         double h = kPatchSpacing);

/// Einstein form with Ric(xi,xi) = mu(1 - theta^2), (Ric(xi))^T = -mu theta T:
/// Delta H - H|A|^2 + H mu(1-theta^2) - lambda H and
/// 2A(grad H) + (m/2) grad(H^2) + 2 mu theta H T.
LambdaResidual lambda_residual_einstein(const SurfaceSample& s, std::size_t p, double lambda,
                                        double mu);
LambdaResidual lambda_residual_einstein(const Immersion& imm, const ChartPoint& x, double lambda,
                                        double mu, double h = kPatchSpacing);

enum class Check {
  kLambdaResidual,
  kLambdaResidualEinstein,
  kHeightLaplacian,
  kAngleLaplacian,
  kTangentParallel,
  kAngleGradient,
  kScalarCurvature,
  kMeanAngleLaplacian,
  kHeightBilaplacian,
  kCodazzi,
  kCmcPivot,
  kUmbilicity,
};

struct CheckInfo {
  Check id;
  std::string_view name;
  std::string_view description;
  int margin;            ///< lattice layers the stencils consume
  bool needs_lambda;
  bool biharmonic_only;  ///< meaningful only on lambda-biharmonic inputs
};

std::span<const CheckInfo> all_checks();
const CheckInfo& check_info(Check id);
std::optional<Check> check_from_name(std::string_view name);
/// The identity chain in evaluation order (height, angle, parallel, curvature, lambda-only, Codazzi).
std::vector<Check> identity_checks();

struct GridMeta {
  int dim = 0;
  std::vector<int> resolution;
  std::vector<double> lo, hi, spacing;
  int margin = 0;

  static GridMeta of(const ChartGrid& grid, int margin);
};

enum class CheckStatus { kPass, kFail, kSkipped, kError };
std::string_view to_string(CheckStatus s);

struct ResidualReport {
  std::string check;
  double max_residual = 0.0;  ///< max |r| / max(1, scale): compared to tolerance
  double max_abs = 0.0;       ///< max |r| over the interior
  double scale = 0.0;         ///< max magnitude of the terms of the identity
  double tolerance = 0.0;
  bool pass = false;
  CheckStatus status = CheckStatus::kFail;
  std::string message;
  GridMeta grid;
  int c = 0;
  int m = 0;
};

/// Per-point residual magnitudes and term magnitudes of one check.
struct CheckField {
  Lattice residual;
  Lattice scale;
  int margin = 2;
};

struct CheckInputs {
  std::optional<double> lambda;
  /// The surface is a known lambda-biharmonic instance at `lambda`.
  bool biharmonic = false;
};

/// Throws ParameterError when the check needs a lambda that is missing.
CheckField evaluate_check(Check id, const SurfaceSample& s, const CheckInputs& in);

ResidualReport summarize(Check id, const CheckField& field, const SurfaceSample& s,
                         double tolerance);

using ToleranceMap = std::map<std::string, double, std::less<>>;

/// Default tolerance per check (generic surfaces).
double default_tolerance(Check id);

/// Runs the checks on one sample; per-check failures become error entries.
std::vector<ResidualReport> run_checks(const SurfaceSample& s, std::span<const Check> checks,
                                       const CheckInputs& in, const ToleranceMap& tolerances);

/// Height, angle, parallel-vertical, scalar-curvature, lambda-only and Codazzi checks.
/// The lambda-only checks are skipped unless in.biharmonic is set.
std::vector<ResidualReport> identity_suite(const Immersion& imm, const ChartGrid& grid,
                                           const CheckInputs& in,
                                           const ToleranceMap& tolerances = {}, int jobs = 1);

/// CMC threshold on max |grad H|_g.
inline constexpr double kCmcThreshold = 1e-8;

/// Pivot theta(|A|^2 + lambda) formed as (r2 - r1)/2 from r1 = Lap theta - lambda theta and
/// r2 = Lap theta + theta(2|A|^2 + lambda). Error status on non-CMC input.
ResidualReport cmc_cross_check(const Immersion& imm, const ChartGrid& grid, double lambda,
                               double tolerance = 1e-8, int jobs = 1);

struct RefinementResult {
  Check check;
  double coarse = 0.0;  ///< max |r| at the shared lattice points, spacing h
  double fine = 0.0;    ///< same points, spacing h/2
  double ratio = 0.0;
  double scale = 1.0;
  bool converged = false;  ///< ratio >= min_ratio, or fine at or below floor * scale
  double floor = 0.0;      ///< rounding_floor on the fine grid
  ResidualReport coarse_report;  ///< whole coarse grid, default tolerance
};

/// Relative level below which a residual on `grid` is treated as rounding
/// noise. A 5-point stencil of derivative order k amplifies an input error of
/// eps by about (64/12)^(k/2) / h^k, so the floor grows as the spacing shrinks;
/// the factor 16 covers the few roundings that feed each lattice value.
double rounding_floor(Check id, const ChartGrid& grid);

/// Compares residuals at the same chart points on `grid` and on a grid with
/// half the spacing and the same point count, centered on the same point.
std::vector<RefinementResult> refinement_study(const Immersion& imm, const ChartGrid& grid,
                                               std::span<const Check> checks,
                                               const CheckInputs& in, int jobs = 1,
                                               double min_ratio = 8.0);

}  // namespace lbh
