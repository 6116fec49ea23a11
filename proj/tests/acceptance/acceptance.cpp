// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../fixtures/semi_parallel.hpp"
#include "lbh/catalog.hpp"
#include "lbh/config.hpp"
#include "lbh/residuals.hpp"
#include "lbh/rotation.hpp"
#include "lbh/run.hpp"

namespace {

using namespace lbh;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Worst lambda residual over the interior of a sample.
struct LambdaMax {
  double normal = 0.0, tangent = 0.0, theta = 0.0, H = 0.0;
};

LambdaMax lambda_max(const SurfaceSample& s, double lambda, int margin = 2) {
  LambdaMax out;
  for (std::size_t p : s.grid().interior_points(margin)) {
    const LambdaResidual r = lambda_residual_spaceform(s, p, lambda);
    out.normal = std::max(out.normal, std::abs(r.normal));
    out.tangent = std::max(out.tangent, r.tangent_norm);
    out.H = std::max(out.H, std::abs(s.mean[p]));
  }
  for (std::size_t p = 0; p < s.grid().size(); ++p)
    out.theta = std::max(out.theta, std::abs(s.theta[p]));
  return out;
}

ChartGrid default_grid(const Immersion& imm, int margin = 4) {
  return ChartGrid::over(imm.domain(), default_resolution(imm.chart_dim()), margin);
}

Outcome criterion1() {
  Outcome o;
  const Check checks[] = {Check::kHeightLaplacian, Check::kAngleLaplacian,
                          Check::kTangentParallel, Check::kAngleGradient,
                          Check::kScalarCurvature, Check::kCodazzi};
  const auto start = std::chrono::steady_clock::now();
  double worst_rel = 0.0, worst_ratio = 1e300;
  int runs = 0, measured = 0, floored = 0;
  for (int m : {2, 3})
    for (int c : {-1, 0, 1})
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const CatalogEntry e = random_graph(AmbientSpace::space_form(c, m), seed);
        const ChartGrid grid = default_grid(e.immersion);
        const auto study = refinement_study(e.immersion, grid, checks, {});
        for (const auto& r : study) {
          const std::string tag = std::string(check_info(r.check).name) + " c=" +
                                  std::to_string(c) + " m=" + std::to_string(m) +
                                  " seed=" + std::to_string(seed);
          const double tol =
              (r.check == Check::kAngleLaplacian || r.check == Check::kCodazzi) ? 1e-5 : 1e-6;
          worst_rel = std::max(worst_rel, r.coarse_report.max_residual / tol);
          o.require(r.coarse_report.max_residual <= tol,
                    tag + " residual " + sci(r.coarse_report.max_residual));
          o.require(r.converged, tag + " refinement ratio " + sci(r.ratio));
          if (r.fine > r.floor * r.scale) {
            worst_ratio = std::min(worst_ratio, r.ratio);
            ++measured;
          } else {
            ++floored;
          }
        }
        ++runs;
      }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs <= 60.0, "runtime " + std::to_string(secs) + " s exceeds 60 s");
  if (o.pass)
    o.detail = std::to_string(runs) + " graphs, worst residual/tolerance " + sci(worst_rel) +
               ", worst refinement ratio " + sci(worst_ratio) + " over " +
               std::to_string(measured) + " studies (" + std::to_string(floored) +
               " at the rounding floor), " + std::to_string(secs) + " s";
  return o;
}

// Lambda residual on a sample at lambda and the +0.1 affinity check.
void lambda_instance(Outcome& o, const CatalogEntry& e, double lambda, double tol,
                     const std::string& tag, double* worst) {
  const SurfaceSample s(e.immersion, ChartGrid::over(e.immersion.domain(), 21, 2));
  const LambdaMax base = lambda_max(s, lambda);
  *worst = std::max({*worst, base.normal, base.tangent});
  o.require(base.normal <= tol && base.tangent <= tol,
            tag + " residual (" + sci(base.normal) + ", " + sci(base.tangent) + ")");
  double aff = 0.0;
  for (std::size_t p : s.grid().interior_points(2)) {
    const LambdaResidual r = lambda_residual_spaceform(s, p, lambda + 0.1);
    aff = std::max(aff, std::abs(std::abs(r.normal) - 0.1 * std::abs(s.mean[p])));
  }
  o.require(aff <= 1e-9, tag + " perturbed normal off 0.1|H| by " + sci(aff));
}

Outcome criterion2() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0})
    for (double tilt : {0.0, 0.4}) {
      const CatalogEntry e = euclidean_cylinder(2, 1, a, tilt);
      o.require(std::abs(e.lambda_star.value + 1.0 / (a * a)) <= 1e-15, "lambda_star R x S^1");
      lambda_instance(o, e, -1.0 / (a * a), 1e-9, "R x S^1(" + sci(a) + ")", &worst);
    }
  const int mk[][2] = {{3, 1}, {3, 2}, {4, 2}};
  for (const auto& p : mk)
    for (double a : {1.0, 2.0}) {
      const CatalogEntry e = euclidean_cylinder(p[0], p[1], a, 0.3);
      const double lambda = -(p[0] - p[1]) / (a * a);
      lambda_instance(o, e, lambda, 1e-9,
                      "R^" + std::to_string(p[1]) + " x S^" + std::to_string(p[0] - p[1]), &worst);
    }
  if (o.pass) o.detail = "max residual component " + sci(worst) + " over 12 cylinders";
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0.0, worst_theta = 0.0;
  for (int m : {2, 3})
    for (double rho : {kPi / 4, kPi / 3}) {
      const CatalogEntry e = spherical_vertical_cylinder(m, rho);
      const double cot = 1.0 / std::tan(rho);
      double lambda = (m - 1) * (1.0 - cot * cot);
      if (m == 3 && rho == kPi / 4) {
        o.require(std::abs(e.lambda_star.value) <= 1e-15, "lambda_star at (3, pi/4) is not 0");
        lambda = 0.0;
      }
      const SurfaceSample s(e.immersion, default_grid(e.immersion, 2));
      const LambdaMax r = lambda_max(s, lambda);
      const std::string tag = "m=" + std::to_string(m) + " rho=" + sci(rho);
      worst = std::max({worst, r.normal, r.tangent});
      worst_theta = std::max(worst_theta, r.theta);
      o.require(r.normal <= 1e-8 && r.tangent <= 1e-8,
                tag + " residual (" + sci(r.normal) + ", " + sci(r.tangent) + ")");
      o.require(r.theta <= 1e-12, tag + " theta " + sci(r.theta));
    }
  if (o.pass)
    o.detail = "max residual " + sci(worst) + ", max |theta| " + sci(worst_theta) +
               ", (3, pi/4) at lambda = 0";
  return o;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  for (double rho : {0.5, 1.0}) {
    const CatalogEntry e = hyperbolic_vertical_cylinder(3, rho);
    const double coth = 1.0 / std::tanh(rho);
    const double lambda = -2.0 * (1.0 + coth * coth);
    const SurfaceSample s(e.immersion, default_grid(e.immersion, 2));
    const LambdaMax r = lambda_max(s, lambda);
    worst = std::max({worst, r.normal, r.tangent});
    o.require(r.normal <= 1e-8 && r.tangent <= 1e-8,
              "rho=" + sci(rho) + " residual (" + sci(r.normal) + ", " + sci(r.tangent) + ")");
  }
  if (o.pass) o.detail = "max residual " + sci(worst);
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::vector<CatalogEntry> entries = standard_entries();
  for (double tilt : {0.3, 0.7}) {
    entries.push_back(euclidean_cylinder(2, 1, 1.0, tilt));
    entries.push_back(euclidean_cylinder(3, 1, 1.0, tilt));
    entries.push_back(euclidean_cylinder(3, 2, 2.0, tilt));
  }
  double w1 = 0.0, w2 = 0.0;
  int count = 0;
  for (const auto& e : entries) {
    if (!e.lambda_star.numeric()) continue;
    const SurfaceSample s(e.immersion, default_grid(e.immersion));
    CheckInputs in;
    in.lambda = e.lambda_star.value;
    in.biharmonic = true;
    const CheckField f1 = evaluate_check(Check::kMeanAngleLaplacian, s, in);
    const CheckField f2 = evaluate_check(Check::kHeightBilaplacian, s, in);
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t p : s.grid().interior_points(2)) r1 = std::max(r1, f1.residual[p]);
    for (std::size_t p : s.grid().interior_points(4)) r2 = std::max(r2, f2.residual[p]);
    w1 = std::max(w1, r1);
    w2 = std::max(w2, r2);
    o.require(r1 <= 1e-6, e.name + " |Lap(H theta) - lambda H theta| = " + sci(r1));
    o.require(r2 <= 1e-5, e.name + " |Lap^2 h - lambda Lap h| = " + sci(r2));
    ++count;
  }
  if (o.pass)
    o.detail = std::to_string(count) + " entries, max " + sci(w1) + " and " + sci(w2);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_kappa = 0.0;
  for (int c : {1, -1})
    for (int trial = 0; trial < 5; ++trial) {
      const double a = 0.3 * u(rng), w = 1.0 + 0.5 * u(rng), ph = u(rng), b = 0.2 * u(rng);
      RotationProfile prof(AmbientSpace::space_form(c, 3),
                           [=](double s) {
                             const double sn = std::sin(w * s + ph), cs = std::cos(w * s + ph);
                             return ProfileJet{a * sn + b * s, a * w * cs + b, -a * w * w * sn,
                                               -a * w * w * w * cs};
                           },
                           0.3, 1.2);
      const Immersion imm = rotation_immersion(prof);
      for (int k = 0; k < 7; ++k) {
        const double s = 0.3 + 0.9 * (k + 0.5) / 7;
        const ChartPoint x{s, 1.1 + 0.2 * u(rng), 0.5 * u(rng), 0.0};
        const GeometryFrame fr = frame_at(imm, x);
        const auto [l1, l2] = rotation_principal_curvatures(prof, s);
        std::vector<double> expect{l1, l2, l2};
        std::sort(expect.begin(), expect.end());
        for (int i = 0; i < 3; ++i)
          worst_kappa = std::max(worst_kappa, std::abs(fr.kappa(i) - expect[i]));
      }
    }
  o.require(worst_kappa <= 1e-8, "closed form vs frame engine " + sci(worst_kappa));

  double worst_H = 0.0, worst_ode = 0.0, min_order = 1e300;
  for (int c : {1, -1}) {
    const AmbientSpace sp = AmbientSpace::space_form(c, 3);
    const double s0 = 0.6, s1 = 1.4;
    const auto prof = minimal_profile_integrate(sp, 0.0, 0.8, s0, s1, 1e-3);
    const Immersion imm = rotation_immersion(prof.profile);
    for (int k = 0; k <= 40; ++k) {
      const double s = s0 + (s1 - s0) * k / 40;
      worst_ode = std::max(worst_ode, std::abs(ode_5_2_residual(prof.profile, s)));
      const GeometryFrame fr = frame_at(imm, ChartPoint{s, 1.3, 0.2, 0.0});
      worst_H = std::max(worst_H, std::abs(fr.H));
    }
    double hs[3];
    for (int i = 0; i < 3; ++i)
      hs[i] = minimal_profile_integrate(sp, 0.0, 0.8, s0, s1, 0.02 / (1 << i)).h.back();
    min_order = std::min(min_order, std::abs(hs[0] - hs[1]) / std::abs(hs[1] - hs[2]));
  }
  o.require(worst_H <= 1e-8, "minimal profile |H| " + sci(worst_H));
  o.require(worst_ode <= 1e-7, "minimal profile ODE residual " + sci(worst_ode));
  o.require(min_order >= 12.0 && min_order <= 20.0, "step-halving ratio " + sci(min_order));
  if (o.pass)
    o.detail = "eigenvalue gap " + sci(worst_kappa) + ", |H| " + sci(worst_H) + ", ODE " +
               sci(worst_ode) + ", halving ratio " + sci(min_order);
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::string d;
  for (const auto& fx : fixtures::kSemiParallel) {
    const auto r = semi_parallel_candidate_check(fx.C, fixtures::kSweepS0, fixtures::kSweepS1,
                                                 fixtures::kSweepM, fixtures::kSweepSamples);
    const std::string tag = "C=" + sci(fx.C);
    o.require(r.identity_max <= 1e-12, tag + " identity " + sci(r.identity_max));
    o.require(r.residual_min > fx.threshold && r.residual_min > 0.0,
              tag + " min residual " + sci(r.residual_min) + " below " + sci(fx.threshold));
    d += tag + " min " + sci(r.residual_min) + " (> " + sci(fx.threshold) + ") ";
  }
  if (o.pass) o.detail = d;
  return o;
}

Outcome criterion8() {
  Outcome o;
  struct Init {
    int m, c;
    double a0, da0;
  };
  const Init inits[] = {{2, 1, kPi / 4, 0.3}, {3, -1, 0.5, -0.2}, {3, 1, 1.1, 0.4}};
  double worst = 0.0;
  for (const auto& in : inits)
    for (double step : {1e-3, 5e-4}) {
      const UmbilicReport r = umbilic_chain_check(in.m, in.c, in.a0, in.da0, 0.5, step);
      worst = std::max(worst, r.max_discrepancy);
      o.require(!r.degenerate, "trajectory crossed sin a cos a = 0");
      o.require(r.max_discrepancy <= 1e-6, "discrepancy " + sci(r.max_discrepancy));
      o.require(r.min_derivative > 0.0, "derivative of the constraint vanished");
    }
  o.require(coefficient_positivity(1000000), "coefficient_positivity(1e6) is false");
  o.require(umbilic_coefficient(2) == 18 && umbilic_coefficient(3) == 41,
            "4m^2 + 3m - 4 at m = 2, 3");
  if (o.pass)
    o.detail = "max discrepancy " + sci(worst) + ", 4m^2+3m-4 > 0 up to 1e6, values 18 and 41";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const AmbientSpace sp = AmbientSpace::space_form(1, 2);
  const CatalogEntry g = random_graph(sp, 7);
  std::vector<Check> all;
  for (const auto& info : all_checks())
    if (info.id != Check::kCmcPivot) all.push_back(info.id);
  CheckInputs in;
  in.lambda = 0.7;
  in.biharmonic = true;

  // Normal flip.
  double flip = 0.0;
  {
    const ChartGrid grid = ChartGrid::over(g.immersion.domain(), 41, 4);
    const SurfaceSample a(g.immersion, grid), b(g.immersion.flipped(), grid);
    for (Check id : all) {
      const CheckField fa = evaluate_check(id, a, in), fb = evaluate_check(id, b, in);
      for (std::size_t p = 0; p < grid.size(); ++p)
        flip = std::max(flip, std::abs(fa.residual[p] - fb.residual[p]));
    }
  }
  o.require(flip <= 1e-12, "normal flip changed a residual by " + sci(flip));

  // Affine reparametrization, pointwise at matched points.
  double affine = 0.0;
  {
    Mat P(2, 2);
    P << 0.8, 0.3, -0.2, 0.9;
    Vec q(2);
    q << 0.05, -0.03;
    const Immersion re = g.immersion.reparametrized(P, q, ChartBox::cube(2, -0.3, 0.3));
    const CatalogEntry cyl = euclidean_cylinder(2, 1, 1.0, 0.4);
    Mat P2(2, 2);
    P2 << 0.0, 1.0, 1.0, 0.0;
    Vec q2 = Vec::Zero(2);
    const Immersion cyl_re = cyl.immersion.reparametrized(P2, q2, cyl.immersion.domain());
    for (int k = 0; k < 5; ++k) {
      const ChartPoint y{-0.2 + 0.1 * k, 0.15 - 0.07 * k, 0, 0};
      ChartPoint x{};
      for (int i = 0; i < 2; ++i) x[i] = P(i, 0) * y[0] + P(i, 1) * y[1] + q(i);
      const LambdaResidual r1 = lambda_residual_spaceform(g.immersion, x, 0.7);
      const LambdaResidual r2 = lambda_residual_spaceform(re, y, 0.7);
      affine = std::max({affine, std::abs(std::abs(r1.normal) - std::abs(r2.normal)),
                         std::abs(r1.tangent_norm - r2.tangent_norm)});
      const ChartPoint yc{1.0 - 0.4 * k / 4, -0.3 + 0.15 * k, 0, 0};
      const ChartPoint xc{yc[1], yc[0], 0, 0};
      const LambdaResidual c1 = lambda_residual_spaceform(cyl.immersion, xc, 0.3);
      const LambdaResidual c2 = lambda_residual_spaceform(cyl_re, yc, 0.3);
      affine = std::max({affine, std::abs(std::abs(c1.normal) - std::abs(c2.normal)),
                         std::abs(c1.tangent_norm - c2.tangent_norm)});
      for (int dz = 0; dz < 2; ++dz)
        affine = std::max(affine, std::abs(codazzi_residual(g.immersion, x, 0, 1, dz) -
                                           codazzi_residual(re, y, 0, 1, dz)));
    }
  }
  o.require(affine <= 1e-8, "affine reparametrization changed a residual by " + sci(affine));

  // Worker count.
  bool same = true;
  {
    const std::string cfg_text =
        R"({"ambient":{"c":-1,"m":3},"surface":{"kind":"graph"},"seed":11,"lambda":0.5,)"
        R"("checks":["lambda_residual","height_laplacian","angle_laplacian","codazzi"]})";
    const RunConfig cfg = parse_config(cfg_text);
    std::string ref;
    for (int jobs : {1, 2, 3, 8}) {
      RunReport rep = run(cfg, jobs);
      rep.wall_time = 0.0;
      const std::string text = emit(rep, ReportFormat::kJson);
      if (ref.empty()) ref = text;
      same = same && text == ref;
    }
  }
  o.require(same, "reports differ across worker counts");
  if (o.pass)
    o.detail = "flip " + sci(flip) + ", affine " + sci(affine) + ", jobs 1/2/3/8 identical";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"identity suite on random graphs", criterion1},
      {"Euclidean cylinders R^k x S^(m-k)(a)", criterion2},
      {"spherical vertical cylinders", criterion3},
      {"hyperbolic vertical cylinders", criterion4},
      {"lambda identities on catalog entries", criterion5},
      {"rotation cross-validation", criterion6},
      {"semi-parallel candidate", criterion7},
      {"umbilic chain", criterion8},
      {"robustness", criterion9},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d %s: %s: %s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
