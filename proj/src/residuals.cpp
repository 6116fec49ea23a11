#include "lbh/residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace lbh {
namespace {

constexpr std::array<CheckInfo, 12> kChecks{{
    {Check::kLambdaResidual, "lambda_residual",
     "space-form lambda-biharmonic system: max(|normal|, |tangent|_g)", 2, true, false},
    {Check::kLambdaResidualEinstein, "lambda_residual_einstein",
     "Einstein-base lambda-biharmonic system with Ric(xi,xi) = mu(1 - theta^2)", 2, true, false},
    {Check::kHeightLaplacian, "height_laplacian", "Lap h - m theta H", 2, false, false},
    {Check::kAngleLaplacian, "angle_laplacian",
     "Lap theta + m <grad H, d/dt> + theta(|A|^2 + Ric(xi,xi))", 2, false, false},
    {Check::kTangentParallel, "tangent_parallel", "|nabla T - theta A|_g", 2, false, false},
    {Check::kAngleGradient, "angle_gradient", "|d theta + <A., T>|_g", 2, false, false},
    {Check::kScalarCurvature, "scalar_curvature",
     "S~ - S - |A|^2 + m^2 H^2 - 2 Ric(xi,xi), S from the Gauss equation", 0, false, false},
    {Check::kMeanAngleLaplacian, "mean_angle_laplacian", "Lap(H theta) - lambda H theta", 2, true,
     true},
    {Check::kHeightBilaplacian, "height_bilaplacian", "Lap^2 h - lambda Lap h", 4, true, true},
    {Check::kCodazzi, "codazzi",
     "max over coordinate triples of |(nabla_X B)(Y,Z) - (nabla_Y B)(X,Z) - <R(X,Y)Z, xi>|", 2,
     false, false},
    {Check::kCmcPivot, "cmc_pivot", "theta(|A|^2 + lambda) on constant-mean-curvature input", 2,
     true, false},
    {Check::kUmbilicity, "umbilicity", "max |b_ij - H g_ij|", 0, false, false},
}};

double sq(double x) { return x * x; }

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

Vec covector(const SurfaceSample& s, const Lattice& f, std::size_t p) {
  Vec d(s.dim());
  for (int j = 0; j < s.dim(); ++j) d(j) = partial_at(s.grid(), f, p, j);
  return d;
}

Mat shape(const SurfaceSample& s, std::size_t p) {
  const int m = s.dim();
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = s.A(p, i, j);
  return a;
}

Vec tangent_T(const SurfaceSample& s, std::size_t p) {
  Vec t(s.dim());
  for (int i = 0; i < s.dim(); ++i) t(i) = s.T(p, i);
  return t;
}

double gnorm(const Mat& g, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

struct LambdaTerms {
  LambdaResidual r;
  double scale = 0.0;
};

// Shared pointwise core; `einstein` selects the Einstein-base form.
LambdaTerms lambda_terms(const SurfaceSample& s, std::size_t p, double lambda, double lap_h,
                         const Vec& dH, bool einstein, double mu) {
  const int m = s.dim();
  const AmbientSpace& sp = s.space();
  const double H = s.mean[p], A2 = s.shape_norm[p], th = s.theta[p];
  const Mat g = s.metric().metric(p);
  const Vec grad_H = s.metric().inverse(p) * dH;
  const Vec AgH = shape(s, p) * grad_H;
  const Vec T = tangent_T(s, p);
  LambdaTerms out;
  out.r.lambda = lambda;
  if (!einstein) {
    const double cm = sp.c * (m - 1);
    const double sin2 = 1.0 - th * th;
    out.r.normal = lap_h - H * (A2 - cm * sin2 + lambda);
    out.r.tangent = AgH + (0.5 * m) * H * grad_H + (cm * th * H) * T;
    out.scale = max_abs({lap_h, H * A2, H * cm * sin2, lambda * H, gnorm(g, AgH),
                         0.5 * m * H * gnorm(g, grad_H), cm * th * H * gnorm(g, T)});
  } else {
    out.r.normal = lap_h - H * A2 + H * mu * (1.0 - th * th) - lambda * H;
    const Vec grad_H2 = 2.0 * H * grad_H;
    out.r.tangent = 2.0 * AgH + (0.5 * m) * grad_H2 + (2.0 * mu * th * H) * T;
    out.scale = max_abs({lap_h, H * A2, H * mu * (1.0 - th * th), lambda * H, 2.0 * gnorm(g, AgH),
                         0.5 * m * gnorm(g, grad_H2), 2.0 * mu * th * H * gnorm(g, T)});
  }
  out.r.tangent_norm = gnorm(g, out.r.tangent);
  return out;
}

LambdaResidual lambda_at_patch(const Immersion& imm, const ChartPoint& x, double lambda, double h,
                               bool einstein, double mu) {
  const ChartGrid patch = ChartGrid::patch(x, imm.chart_dim(), 2, h);
  const SurfaceSample s(imm, patch);
  const std::size_t p = patch.center();
  return lambda_terms(s, p, lambda, laplace_beltrami(s.mean, p, s.metric()),
                      covector(s, s.mean.values, p), einstein, mu)
      .r;
}

double require_lambda(const CheckInputs& in, Check id) {
  if (!in.lambda)
    throw ParameterError(std::string(check_info(id).name) + " needs a numeric lambda");
  return *in.lambda;
}

}  // namespace

LambdaResidual lambda_residual_spaceform(const SurfaceSample& s, std::size_t p, double lambda) {
  return lambda_terms(s, p, lambda, laplace_beltrami(s.mean, p, s.metric()),
                      covector(s, s.mean.values, p), false, 0.0)
      .r;
}

LambdaResidual lambda_residual_spaceform(const Immersion& imm, const ChartPoint& x, double lambda,
                                         double h) {
  return lambda_at_patch(imm, x, lambda, h, false, 0.0);
}

LambdaResidual lambda_residual_einstein(const SurfaceSample& s, std::size_t p, double lambda,
                                        double mu) {
  return lambda_terms(s, p, lambda, laplace_beltrami(s.mean, p, s.metric()),
                      covector(s, s.mean.values, p), true, mu)
      .r;
}

LambdaResidual lambda_residual_einstein(const Immersion& imm, const ChartPoint& x, double lambda,
                                        double mu, double h) {
  return lambda_at_patch(imm, x, lambda, h, true, mu);
}

std::span<const CheckInfo> all_checks() { return kChecks; }

const CheckInfo& check_info(Check id) {
  for (const auto& c : kChecks)
    if (c.id == id) return c;
  throw ParameterError("unknown check id");
}

std::optional<Check> check_from_name(std::string_view name) {
  for (const auto& c : kChecks)
    if (c.name == name) return c.id;
  return std::nullopt;
}

std::vector<Check> identity_checks() {
  return {Check::kHeightLaplacian,    Check::kAngleLaplacian,    Check::kTangentParallel,
          Check::kAngleGradient,      Check::kScalarCurvature,   Check::kMeanAngleLaplacian,
          Check::kHeightBilaplacian,  Check::kCodazzi};
}

GridMeta GridMeta::of(const ChartGrid& grid, int margin) {
  GridMeta g;
  g.dim = grid.dim;
  g.margin = margin;
  const ChartBox box = grid.box();
  for (int i = 0; i < grid.dim; ++i) {
    g.resolution.push_back(grid.n[i]);
    g.lo.push_back(box.lo[i]);
    g.hi.push_back(box.hi[i]);
    g.spacing.push_back(grid.spacing[i]);
  }
  return g;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
    case CheckStatus::kError: return "error";
  }
  return "error";
}

double default_tolerance(Check id) {
  switch (id) {
    case Check::kCmcPivot:
    case Check::kUmbilicity: return 1e-8;
    case Check::kHeightLaplacian:
    case Check::kTangentParallel:
    case Check::kAngleGradient:
    case Check::kScalarCurvature:
    case Check::kMeanAngleLaplacian: return 1e-6;
    default: return 1e-5;
  }
}

CheckField evaluate_check(Check id, const SurfaceSample& s, const CheckInputs& in) {
  const ChartGrid& grid = s.grid();
  const MetricField& metric = s.metric();
  const AmbientSpace& sp = s.space();
  const int m = s.dim();
  const std::size_t npts = grid.size();
  CheckField out;
  out.margin = check_info(id).margin;
  out.residual.assign(npts, 0.0);
  out.scale.assign(npts, 0.0);
  const auto pts = grid.interior_points(std::max(out.margin, 2));

  switch (id) {
    case Check::kLambdaResidual:
    case Check::kLambdaResidualEinstein: {
      const double lambda = require_lambda(in, id);
      const bool einstein = id == Check::kLambdaResidualEinstein;
      const ScalarField lap = laplace_beltrami(s.mean, metric);
      std::vector<Lattice> dH;
      for (int j = 0; j < m; ++j) dH.push_back(partial(grid, s.mean.values, j));
      for (std::size_t p : pts) {
        Vec d(m);
        for (int j = 0; j < m; ++j) d(j) = dH[j][p];
        const LambdaTerms t = lambda_terms(s, p, lambda, lap[p], d, einstein, sp.mu);
        out.residual[p] = std::max(std::abs(t.r.normal), t.r.tangent_norm);
        out.scale[p] = t.scale;
      }
      break;
    }
    case Check::kHeightLaplacian: {
      const ScalarField lap = laplace_beltrami(s.height, metric);
      for (std::size_t p : pts) {
        const double rhs = m * s.theta[p] * s.mean[p];
        out.residual[p] = std::abs(lap[p] - rhs);
        out.scale[p] = max_abs({lap[p], rhs});
      }
      break;
    }
    case Check::kAngleLaplacian: {
      const ScalarField lap = laplace_beltrami(s.theta, metric);
      std::vector<Lattice> dH;
      for (int j = 0; j < m; ++j) dH.push_back(partial(grid, s.mean.values, j));
      for (std::size_t p : pts) {
        double dHT = 0.0;
        for (int j = 0; j < m; ++j) dHT += dH[j][p] * s.T(p, j);
        const double curv = s.theta[p] * (s.shape_norm[p] + s.ricci_normal[p]);
        out.residual[p] = std::abs(lap[p] + m * dHT + curv);
        out.scale[p] = max_abs({lap[p], m * dHT, curv});
      }
      break;
    }
    case Check::kTangentParallel: {
      // dT[i * m + k] = d_k T^i
      std::vector<Lattice> dT;
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) dT.push_back(partial(grid, s.T_components()[i].values, k));
      for (std::size_t p : pts) {
        const Mat g = metric.metric(p), ginv = metric.inverse(p);
        Mat nabla_T(m, m), thetaA(m, m);
        for (int k = 0; k < m; ++k)
          for (int i = 0; i < m; ++i) {
            double v = dT[i * m + k][p];
            for (int j = 0; j < m; ++j) v += metric.christoffel(p, i, k, j) * s.T(p, j);
            nabla_T(i, k) = v;
            thetaA(i, k) = s.theta[p] * s.A(p, i, k);
          }
        // |R|^2 = g_ij g^{kl} R^i_k R^j_l
        auto norm = [&](const Mat& r) {
          return std::sqrt(std::max(0.0, (r.transpose() * g * r * ginv).trace()));
        };
        out.residual[p] = norm(nabla_T - thetaA);
        out.scale[p] = std::max(norm(nabla_T), norm(thetaA));
      }
      break;
    }
    case Check::kAngleGradient: {
      for (std::size_t p : pts) {
        const Mat ginv = metric.inverse(p);
        const Vec dth = covector(s, s.theta.values, p);
        Vec bT(m);
        for (int k = 0; k < m; ++k) {
          bT(k) = 0.0;
          for (int j = 0; j < m; ++j) bT(k) += s.b(p, k, j) * s.T(p, j);
        }
        out.residual[p] = gnorm(ginv, dth + bT);
        out.scale[p] = std::max(gnorm(ginv, dth), gnorm(ginv, bT));
      }
      break;
    }
    case Check::kScalarCurvature: {
      const double s_amb = ambient_scalar_curvature(sp);
      for (std::size_t p : pts) {
        const double mH2 = sq(m * s.mean[p]);
        const double A2 = s.shape_norm[p];
        const double scal = s.tangential_curvature[p] + mH2 - A2;
        const double ric2 = 2.0 * s.ricci_normal[p];
        out.residual[p] = std::abs(s_amb - scal - A2 + mH2 - ric2);
        out.scale[p] = max_abs({s_amb, scal, A2, mH2, ric2});
      }
      break;
    }
    case Check::kMeanAngleLaplacian: {
      const double lambda = require_lambda(in, id);
      ScalarField ht(grid, "Htheta");
      for (std::size_t p = 0; p < npts; ++p) ht[p] = s.mean[p] * s.theta[p];
      const ScalarField lap = laplace_beltrami(ht, metric);
      for (std::size_t p : pts) {
        out.residual[p] = std::abs(lap[p] - lambda * ht[p]);
        out.scale[p] = max_abs({lap[p], lambda * ht[p]});
      }
      break;
    }
    case Check::kHeightBilaplacian: {
      const double lambda = require_lambda(in, id);
      const ScalarField lap = laplace_beltrami(s.height, metric);
      const ScalarField bilap = laplace_beltrami(lap, metric);
      for (std::size_t p : pts) {
        out.residual[p] = std::abs(bilap[p] - lambda * lap[p]);
        out.scale[p] = max_abs({bilap[p], lambda * lap[p]});
      }
      break;
    }
    case Check::kCodazzi: {
      // db[i * sym + sym_index(j, k)] = d_i b_jk
      const int nsym = sym_size(m);
      std::vector<Lattice> db;
      for (int i = 0; i < m; ++i)
        for (int jk = 0; jk < nsym; ++jk) db.push_back(Lattice());
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = j; k < m; ++k)
            db[i * nsym + sym_index(j, k, m)] = partial(grid, s.b_lattice(j, k), i);
      auto nabla_b = [&](std::size_t p, int i, int j, int k) {
        double v = db[i * nsym + sym_index(j, k, m)][p];
        for (int l = 0; l < m; ++l)
          v -= metric.christoffel(p, l, i, j) * s.b(p, l, k) +
               metric.christoffel(p, l, i, k) * s.b(p, j, l);
        return v;
      };
      for (std::size_t p : pts) {
        double r = 0.0, sc = 0.0;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k) {
              const double bi = nabla_b(p, i, j, k);
              const double bj = nabla_b(p, j, i, k);
              const double amb = s.codazzi_ambient(p, i, j, k);
              r = std::max(r, std::abs(bi - bj - amb));
              sc = std::max(sc, max_abs({bi, bj, amb}));
            }
        out.residual[p] = r;
        out.scale[p] = sc;
      }
      break;
    }
    case Check::kCmcPivot: {
      const double lambda = require_lambda(in, id);
      const ScalarField lap = laplace_beltrami(s.theta, metric);
      for (std::size_t p : pts) {
        const double th = s.theta[p];
        const double r1 = lap[p] - lambda * th;
        const double r2 = lap[p] + th * (2.0 * s.shape_norm[p] + lambda);
        out.residual[p] = std::abs(r2 - r1) / 2.0;
        out.scale[p] = max_abs({th * s.shape_norm[p], lambda * th});
      }
      break;
    }
    case Check::kUmbilicity: {
      for (std::size_t p : pts) out.residual[p] = s.umbilicity[p];
      break;
    }
  }
  return out;
}

ResidualReport summarize(Check id, const CheckField& field, const SurfaceSample& s,
                         double tolerance) {
  const int margin = std::max(field.margin, s.grid().margin);
  ResidualReport r;
  r.check = std::string(check_info(id).name);
  r.tolerance = tolerance;
  r.grid = GridMeta::of(s.grid(), margin);
  r.c = s.space().c;
  r.m = s.space().m;
  bool finite = true;
  for (std::size_t p : s.grid().interior_points(margin)) {
    if (!std::isfinite(field.residual[p])) finite = false;
    r.max_abs = std::max(r.max_abs, field.residual[p]);
    r.scale = std::max(r.scale, field.scale[p]);
  }
  r.max_residual = r.max_abs / std::max(1.0, r.scale);
  r.pass = finite && r.max_residual <= tolerance;
  r.status = r.pass ? CheckStatus::kPass : CheckStatus::kFail;
  if (!finite) {
    r.max_residual = r.max_abs = std::numeric_limits<double>::infinity();
    r.message = "non-finite residual";
  }
  return r;
}

std::vector<ResidualReport> run_checks(const SurfaceSample& s, std::span<const Check> checks,
                                       const CheckInputs& in, const ToleranceMap& tolerances) {
  std::vector<ResidualReport> out;
  for (Check id : checks) {
    const CheckInfo& info = check_info(id);
    const auto tol_it = tolerances.find(info.name);
    const double tol = tol_it != tolerances.end() ? tol_it->second : default_tolerance(id);
    ResidualReport skipped;
    skipped.check = std::string(info.name);
    skipped.tolerance = tol;
    skipped.grid = GridMeta::of(s.grid(), std::max(info.margin, s.grid().margin));
    skipped.c = s.space().c;
    skipped.m = s.space().m;
    if (info.biharmonic_only && !in.biharmonic) {
      skipped.status = CheckStatus::kSkipped;
      skipped.pass = true;
      skipped.message = "applies only to lambda-biharmonic instances";
      out.push_back(skipped);
      continue;
    }
    try {
      if (id == Check::kCmcPivot) {
        double grad_max = 0.0;
        for (std::size_t p : s.grid().interior_points(std::max(2, s.grid().margin))) {
          const Vec gH = grad(s.mean, p, s.metric());
          grad_max = std::max(grad_max, gnorm(s.metric().metric(p), gH));
        }
        if (grad_max > kCmcThreshold)
          throw ParameterError("input is not CMC: max |grad H| = " + std::to_string(grad_max));
      }
      out.push_back(summarize(id, evaluate_check(id, s, in), s, tol));
    } catch (const std::exception& e) {
      skipped.status = CheckStatus::kError;
      skipped.pass = false;
      skipped.max_residual = skipped.max_abs = std::numeric_limits<double>::infinity();
      skipped.message = e.what();
      out.push_back(skipped);
    }
  }
  return out;
}

std::vector<ResidualReport> identity_suite(const Immersion& imm, const ChartGrid& grid,
                                           const CheckInputs& in, const ToleranceMap& tolerances,
                                           int jobs) {
  const SurfaceSample s(imm, grid, jobs);
  const auto checks = identity_checks();
  return run_checks(s, checks, in, tolerances);
}

ResidualReport cmc_cross_check(const Immersion& imm, const ChartGrid& grid, double lambda,
                               double tolerance, int jobs) {
  const SurfaceSample s(imm, grid, jobs);
  const Check id = Check::kCmcPivot;
  CheckInputs in;
  in.lambda = lambda;
  return run_checks(s, std::span<const Check>(&id, 1), in, {{"cmc_pivot", tolerance}}).front();
}

double rounding_floor(Check id, const ChartGrid& grid) {
  double h = grid.spacing[0];
  for (int i = 1; i < grid.dim; ++i) h = std::min(h, grid.spacing[i]);
  // The bilaplacian is the only fourth-order field.
  const int order = check_info(id).margin >= 4 ? 4 : 2;
  const double amp = std::pow(64.0 / 12.0, order / 2) / std::pow(h, order);
  return 16.0 * std::numeric_limits<double>::epsilon() * amp;
}

std::vector<RefinementResult> refinement_study(const Immersion& imm, const ChartGrid& grid,
                                               std::span<const Check> checks,
                                               const CheckInputs& in, int jobs,
                                               double min_ratio) {
  ChartGrid fine = grid;
  for (int i = 0; i < grid.dim; ++i) {
    if (grid.n[i] % 2 == 0) throw ParameterError("refinement needs an odd point count per axis");
    const double center = grid.lo[i] + (grid.n[i] / 2) * grid.spacing[i];
    fine.spacing[i] = grid.spacing[i] / 2.0;
    fine.lo[i] = center - (grid.n[i] / 2) * fine.spacing[i];
  }
  const SurfaceSample coarse_s(imm, grid, jobs);
  const SurfaceSample fine_s(imm, fine, jobs);

  std::vector<RefinementResult> out;
  for (Check id : checks) {
    const CheckField fc = evaluate_check(id, coarse_s, in);
    const CheckField ff = evaluate_check(id, fine_s, in);
    const int margin = std::max({fc.margin, grid.margin, 2});
    RefinementResult r;
    r.check = id;
    r.coarse_report = summarize(id, fc, coarse_s, default_tolerance(id));
    double scale = 0.0;
    // Coarse offset d maps to fine offset 2d from the shared center.
    for (std::size_t pc = 0; pc < grid.size(); ++pc) {
      const LatticeIndex ic = grid.unflatten(pc);
      LatticeIndex jf{};
      bool shared = true;
      for (int i = 0; i < grid.dim; ++i) {
        const int d = ic[i] - grid.n[i] / 2;
        jf[i] = fine.n[i] / 2 + 2 * d;
        if (jf[i] < margin || jf[i] > fine.n[i] - 1 - margin) shared = false;
      }
      if (!shared || !grid.interior(pc, margin)) continue;
      const std::size_t pf = fine.flatten(jf);
      r.coarse = std::max(r.coarse, fc.residual[pc]);
      r.fine = std::max(r.fine, ff.residual[pf]);
      scale = std::max({scale, fc.scale[pc], ff.scale[pf]});
    }
    r.scale = std::max(1.0, scale);
    r.ratio = r.fine > 0.0 ? r.coarse / r.fine : std::numeric_limits<double>::infinity();
    r.floor = rounding_floor(id, fine);
    r.converged = r.ratio >= min_ratio || r.fine <= r.floor * r.scale;
    out.push_back(r);
  }
  return out;
}

}  // namespace lbh
