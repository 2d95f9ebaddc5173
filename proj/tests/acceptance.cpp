// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, INFO lines with the measured values.
// Exit status is nonzero only on an internal error; failing criteria are reported, not hidden.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hodge/bounds.hpp"
#include "hodge/cech.hpp"
#include "hodge/dec.hpp"
#include "hodge/geometry.hpp"
#include "hodge/harness.hpp"
#include "hodge/meshgen.hpp"
#include "oracles.hpp"

using namespace hodge;

namespace
{

// Tolerances.
constexpr double kSquareTol = 0.02;
constexpr double kSquareSeconds = 60.0;
constexpr double kDiskTol = 0.02;
constexpr double kAnnulusTol = 0.03;
constexpr double kUnionSeconds = 600.0;
constexpr int kMinGluingConfigs = 3;
constexpr double kRateSlope = 1.0;
constexpr double kRateTol = 0.15;
constexpr double kPerforatedTol = 0.05;
constexpr double kBand = 10.0;
constexpr double kResidual = 1e-8;
constexpr int kRandomFamilies = 100;
constexpr double kCechExact = 1e-12;
constexpr double kVolumeTol = 1e-6;
constexpr double kPlanarVolumeTol = 1e-12;
constexpr double kRoundOff = 1e-12;

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int failures = 0;

void report(int id, bool pass, const std::string &detail)
{
  std::printf("CRITERION %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

void info(const std::string &s)
{
  std::printf("  INFO %s\n", s.c_str());
  std::fflush(stdout);
}

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

std::string config_path(const std::string &name)
{
  return std::string(HODGE_SOURCE_DIR) + "/configs/" + name + ".ini";
}

struct Timed
{
  SweepResult result;
  double seconds = 0.0;
};

std::map<std::string, Timed> cache;

const Timed &sweep(const std::string &name)
{
  auto it = cache.find(name);
  if (it != cache.end())
  {
    return it->second;
  }
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  t.result = run(ExperimentConfig::load(config_path(name)));
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  info(fmt::format("{}: {} rows in {:.1f} s", name, t.result.rows.size(), t.seconds));
  for (const auto &r : t.result.rows)
  {
    if (!r.error.empty())
    {
      info(fmt::format("{}: row error: {}", name, r.error));
    }
  }
  return cache.emplace(name, std::move(t)).first->second;
}

double finest_lambda(const SweepResult &r)
{
  const SweepRow &row = r.rows.back();
  return row.error.empty() && !row.eigenvalues.empty() ? row.eigenvalues[0] : kNaN;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

// 1. Analytic spectra.
void analytic_spectra()
{
  const Timed &sq = sweep("square");
  const double mu_sq = finest_lambda(sq.result);
  const double j11 = oracle::kBesselPrime11 * oracle::kBesselPrime11;
  const double mu_disk = finest_lambda(sweep("disk").result);
  const double ann_oracle = oracle::annulus_neumann_mu1(1.0, 2.0);
  const double mu_ann = finest_lambda(sweep("annulus").result);
  info(fmt::format("square mu1 = {:.6f} (pi^2 = {:.6f}), {:.1f} s", mu_sq, kPi2, sq.seconds));
  info(fmt::format("disk mu1 = {:.6f} (j'11^2 = {:.6f})", mu_disk, j11));
  info(fmt::format("annulus mu1 = {:.6f} (shooting oracle {:.6f})", mu_ann, ann_oracle));
  const bool pass = rel(mu_sq, kPi2) <= kSquareTol && sq.seconds < kSquareSeconds &&
                    rel(mu_disk, j11) <= kDiskTol && rel(mu_ann, ann_oracle) <= kAnnulusTol;
  report(1, pass,
         fmt::format("square {:.2e}, disk {:.2e}, annulus {:.2e} relative error", rel(mu_sq, kPi2),
                     rel(mu_disk, j11), rel(mu_ann, ann_oracle)));
}

// 2. D^2 = 0 on every suite mesh and exact Betti numbers.
void structural_exactness()
{
  int meshes = 0;
  bool dd = true;
  for (const auto &entry : std::filesystem::directory_iterator(std::string(HODGE_SOURCE_DIR) + "/configs"))
  {
    if (entry.path().extension() != ".ini")
    {
      continue;
    }
    const auto cfg = ExperimentConfig::load(entry.path().string());
    for (const auto &g : grid(cfg))
    {
      try
      {
        const Instance inst = build_instance(cfg, g, cfg.h.front());
        for (int p = 0; p + 1 < inst.mesh->dim(); p++)
        {
          dd = dd && coboundary_squares_to_zero(*inst.mesh, p);
        }
        meshes++;
      }
      catch (const Error &e)
      {
        info(fmt::format("{}: {}", cfg.id, e.what()));
        dd = false;
      }
    }
  }
  const auto annulus = betti_numbers(mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.1));
  OuterBody outer;
  outer.radius = 2.0;
  const auto shell = betti_numbers(mesh3d_shell(P(0, 0, 0), 1.0, outer, 0.4));
  const auto disk = betti_numbers(mesh_domain(DomainSpec::ball(2, P(0, 0), 1.0), 0.1));
  const bool betti_ok = annulus == std::vector<int>{1, 1, 0} && shell == std::vector<int>{1, 0, 1, 0} &&
                        disk == std::vector<int>{1, 0, 0};
  info(fmt::format("betti annulus {}, shell {}, disk {}", fmt::join(annulus, ","),
                   fmt::join(shell, ","), fmt::join(disk, ",")));
  report(2, dd && betti_ok && meshes > 0,
         fmt::format("D D = 0 on {} meshes: {}; Betti numbers exact: {}", meshes, dd, betti_ok));
}

int count_checks(const SweepResult &r, const std::string &bound, bool *all_pass)
{
  int n = 0;
  for (const auto &c : r.checks)
  {
    if (c.bound == bound)
    {
      n++;
      *all_pass = *all_pass && c.pass;
      info(fmt::format("{} {} {}: lambda {:.6g} >= {:.6g} (margin {:.3g}){}", r.config.id, c.instance,
                       c.bound, c.lambda, c.value, c.margin, c.pass ? "" : " VIOLATED"));
    }
  }
  return n;
}

// 3. Union Neumann inequality on the dumbbell and the two-annulus cover.
void union_inequality()
{
  const Timed &dumb = sweep("union_dumbbell");
  const Timed &case2 = sweep("union_case2");
  bool all = true;
  const int n = count_checks(dumb.result, "union_neumann", &all) +
                count_checks(case2.result, "union_neumann", &all);
  const double seconds = dumb.seconds + case2.seconds;
  const int expected = static_cast<int>(grid(dumb.result.config).size() + grid(case2.result.config).size());
  report(3, all && n == expected && seconds < kUnionSeconds,
         fmt::format("{} of {} instances checked, all hold: {}, {:.0f} s", n, expected, all, seconds));
}

// 4. Gluing bounds for exact 1- and 2-eigenvalues.
void gluing_inequalities()
{
  int p1 = 0, p2 = 0;
  bool all = true;
  for (const char *name : {"gluing_p1_annulus", "gluing_p1_dumbbell", "gluing_p1_power", "gluing_p1_sphere"})
  {
    p1 += count_checks(sweep(name).result, "mcgowan_p1", &all) > 0 ? 1 : 0;
  }
  for (const char *name : {"gluing_p2_shell_a", "gluing_p2_shell_b", "gluing_p2_shell_c"})
  {
    p2 += count_checks(sweep(name).result, "mcgowan_p2", &all) > 0 ? 1 : 0;
  }
  report(4, all && p1 >= kMinGluingConfigs && p2 >= kMinGluingConfigs,
         fmt::format("p = 1 on {} covers, p = 2 on {} covers, all hold: {}", p1, p2, all));
}

bool slope_ok(const SweepResult &r, const std::string &key, double *slope)
{
  auto it = r.slopes.find(key);
  if (it == r.slopes.end())
  {
    *slope = kNaN;
    return false;
  }
  *slope = it->second.slope;
  info(fmt::format("{} slope of {} = {:.4f} +- {:.4f} over {} points", r.config.id, key,
                   it->second.slope, it->second.stderr_slope, it->second.points));
  return std::abs(*slope - kRateSlope) <= kRateTol;
}

// 5. Dumbbell rate.
void dumbbell_rate()
{
  const SweepResult &r = sweep("dumbbell_rate").result;
  double s = 0.0;
  const bool ok = slope_ok(r, "lambda1", &s);
  report(5, ok, fmt::format("fitted slope {:.4f}, target {} +- {}", s, kRateSlope, kRateTol));
}

// 6. Test-form rate and monotone first eigenvalue.
void test_form_rate()
{
  const SweepResult &r = sweep("aeps_rate").result;
  double s = 0.0, num = 0.0, lam = 0.0;
  const bool ok = slope_ok(r, "test_rq", &s);
  slope_ok(r, "test_numerator", &num);
  slope_ok(r, "lambda1", &lam);
  bool monotone = true;
  double prev = kInfinity;
  for (const auto &row : r.rows)
  {
    const double mu = row.eigenvalues.empty() ? kNaN : row.eigenvalues[0];
    info(fmt::format("eps {:.3f}: mu1 = {:.6g}, test quotient = {:.6g}", row.point.eps, mu,
                     row.value("test_rq")));
    monotone = monotone && mu < prev;
    prev = mu;
  }
  report(6, ok && monotone,
         fmt::format("quotient slope {:.4f} (target {} +- {}), mu1 decreasing: {}", s, kRateSlope,
                     kRateTol, monotone));
}

// 7. Perforated square converges to the unperforated spectrum.
void perforated()
{
  const SweepResult &r = sweep("perforated").result;
  double at_smallest = kNaN;
  double smallest = kInfinity;
  for (const auto &row : r.rows)
  {
    const double mu = row.eigenvalues.empty() ? kNaN : row.eigenvalues[0];
    info(fmt::format("radius {:.3f}: mu1 = {:.6f}", row.point.radius, mu));
    if (row.point.radius > 0.0 && row.point.radius < smallest)
    {
      smallest = row.point.radius;
      at_smallest = mu;
    }
  }
  report(7, rel(at_smallest, kPi2) <= kPerforatedTol,
         fmt::format("radius {}: relative distance to pi^2 {:.3e}", smallest, rel(at_smallest, kPi2)));
}

// 8. The annulus factor tracks the computed eigenvalue within a fixed band.
void scaling_law()
{
  const SweepResult &r = sweep("rc_sweep").result;
  std::vector<double> ratio, factor, lambda;
  for (const auto &row : r.rows)
  {
    if (!row.error.empty() || row.eigenvalues.empty())
    {
      continue;
    }
    for (const auto &b : row.bounds)
    {
      if (b.id == "annulus_p1")
      {
        factor.push_back(b.value);
        lambda.push_back(row.eigenvalues[0]);
        ratio.push_back(row.eigenvalues[0] / b.value);
        info(fmt::format("Rc {:.2f}: lambda = {:.6g}, factor = {:.6g}, ratio = {:.6g}", row.point.rc,
                         lambda.back(), b.value, ratio.back()));
      }
    }
  }
  if (ratio.empty())
  {
    report(8, false, "no annulus factors computed");
    return;
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  // Largest single constant valid on every instance.
  const double K = *lo;
  bool holds = true;
  for (std::size_t i = 0; i < ratio.size(); i++)
  {
    holds = holds && lambda[i] >= K * factor[i] * (1.0 - kRoundOff);
  }
  report(8, *hi / *lo <= kBand && holds && ratio.size() >= 4,
         fmt::format("ratio band {:.3g} (limit {}), K = {:.4g} holds on {} instances", *hi / *lo,
                     kBand, K, ratio.size()));
}

// 9. Primitive residuals and the Cech complex identities.
void cech_correctness()
{
  double worst = 0.0;
  int instances = 0;
  for (const char *name : {"gluing_p1_annulus", "gluing_p1_dumbbell", "gluing_p1_power", "gluing_p1_sphere",
                           "gluing_p2_shell_a", "gluing_p2_shell_b", "gluing_p2_shell_c"})
  {
    const SweepResult &r = sweep(name).result;
    const ExperimentConfig &cfg = r.config;
    for (const auto &row : r.rows)
    {
      const double g = row.value("glued_residual");
      if (!row.error.empty() || std::isnan(g))
      {
        worst = kInfinity;
        continue;
      }
      worst = std::max(worst, g);
      instances++;
    }
    if (cfg.degree != 1)
    {
      continue;
    }
    const auto g = grid(cfg).front();
    const Instance inst = build_instance(cfg, g, cfg.h.back());
    const auto cover = build_cover(cfg, g, inst);
    const auto pou = partition_of_unity(*cover, cfg.margin);
    const SimplicialMesh &m = *inst.mesh;
    Vector f(m.count(0));
    for (int v = 0; v < m.count(0); v++)
    {
      f(v) = std::sin(1.3 * m.vertex(v)(0)) * std::cos(0.7 * m.vertex(v)(1)) + m.vertex(v)(0);
    }
    const auto res = cech_primitive(m, *cover, pou, coboundary(m, 0) * f, 1);
    info(fmt::format("{}: cech_primitive residual {:.3e}", name, res.residual));
    worst = std::max(worst, res.residual);
    instances++;
  }

  const auto spec = DomainSpec::box(2, P(0, 0), P(4, 4))
                      .add_hole(P(1, 1), 0.3)
                      .add_hole(P(3, 1), 0.3)
                      .add_hole(P(2, 3), 0.3);
  const auto m = mesh_domain(spec, 0.25);
  const Cover cover = power_cover(m, power_diagram(spec), 0.4, 3);
  double dd = 0.0, comm = 0.0;
  for (int s = 0; s < kRandomFamilies; s++)
  {
    const int q = s % 2;
    const int r = (s / 2) % 3;
    const CechCochain a = random_cech(cover, q, r, 1000 + s);
    const double an = std::max(cech_norm(a), 1.0);
    dd = std::max(dd, cech_norm(cech_delta(cover, cech_delta(cover, a))) / an);
    if (r < 2)
    {
      const CechCochain x = cech_d(cover, cech_delta(cover, a));
      const CechCochain y = cech_delta(cover, cech_d(cover, a));
      for (const auto &[I, v] : x.values)
      {
        comm = std::max(comm, (v - y.values.at(I)).cwiseAbs().maxCoeff() / an);
      }
    }
  }
  info(fmt::format("random families: max |dd| {:.2e}, max |d delta - delta d| {:.2e}", dd, comm));
  report(9, worst <= kResidual && dd <= kCechExact && comm <= kCechExact,
         fmt::format("worst residual {:.3e} on {} primitives; {} random families exact: {}", worst,
                     instances, kRandomFamilies, dd <= kCechExact && comm <= kCechExact));
}

double cell_sum(const DomainSpec &spec)
{
  double total = 0.0;
  for (const auto &c : power_diagram(spec).cells)
  {
    total += c.volume;
  }
  return total;
}

// 10. Power-diagram volumes, Voronoi coincidence, scaling of the measures.
void geometry()
{
  auto box = DomainSpec::box(2, P(0, 0), P(6, 4));
  box.add_hole(P(1, 1), 0.4).add_hole(P(3.5, 1.2), 0.7).add_hole(P(2, 3), 0.3).add_hole(P(5, 3), 0.5);
  const double planar = rel(cell_sum(box), domain_volume(box));
  const auto disk = DomainSpec::ball(2, P(0, 0), 3.0).add_hole(P(-1, 0), 0.5).add_hole(P(1.2, 0.4), 0.8);
  const double curved = rel(cell_sum(disk), domain_volume(disk));
  const auto cube = DomainSpec::box(3, P(0, 0, 0), P(4, 3, 3))
                      .add_hole(P(1, 1, 1), 0.4)
                      .add_hole(P(3, 1.5, 1.5), 0.6)
                      .add_hole(P(1.5, 2, 2), 0.3);
  const double spatial = rel(cell_sum(cube), domain_volume(cube));
  info(fmt::format("volume sums: box {:.2e}, disk {:.2e}, cube {:.2e}", planar, curved, spatial));

  auto same = DomainSpec::box(2, P(0, 0), P(6, 4));
  same.add_hole(P(1, 1), 0.4).add_hole(P(3.5, 1.2), 0.4).add_hole(P(2, 3), 0.4);
  const auto part = power_diagram(same);
  double voronoi = 0.0;
  for (std::size_t i = 0; i < part.cells.size(); i++)
  {
    const auto &c = part.cells[i];
    for (std::size_t k = 0; k < c.walls.size(); k++)
    {
      const Point ci = same.holes[i].center;
      const Point cj = same.holes[c.wall_hole[k]].center;
      const Point u = (cj - ci).normalized();
      const Point nrm = c.walls[k].normal.normalized();
      voronoi = std::max(voronoi, (nrm - u).norm());
      voronoi = std::max(voronoi, std::abs(c.walls[k].offset / c.walls[k].normal.norm() - u.dot(0.5 * (ci + cj))));
    }
  }

  double homog = 0.0;
  for (double s : {0.5, 2.0, 3.7})
  {
    const auto a = measure(box);
    const auto b = measure(transform(box, s, P(0.3, -1.1)));
    homog = std::max({homog, rel(b.D, s * a.D), rel(b.Rc_hat, s * a.Rc_hat), rel(b.RP, s * a.RP)});
  }
  info(fmt::format("Voronoi deviation {:.2e}, homogeneity deviation {:.2e}", voronoi, homog));
  report(10,
         planar <= kPlanarVolumeTol && curved <= kVolumeTol && spatial <= kVolumeTol &&
           voronoi <= kRoundOff && homog <= kRoundOff,
         fmt::format("volume sums {:.1e}/{:.1e}/{:.1e}, Voronoi {:.1e}, homogeneity {:.1e}", planar,
                     curved, spatial, voronoi, homog));
}

}  // namespace

int main(int argc, char **argv)
{
  std::vector<std::function<void()>> criteria = {analytic_spectra, structural_exactness, union_inequality,
                                                 gluing_inequalities, dumbbell_rate, test_form_rate,
                                                 perforated, scaling_law, cech_correctness, geometry};
  std::vector<int> only;
  for (int i = 1; i < argc; i++)
  {
    only.push_back(std::atoi(argv[i]));
  }
  try
  {
    for (std::size_t i = 0; i < criteria.size(); i++)
    {
      if (only.empty() || std::find(only.begin(), only.end(), static_cast<int>(i + 1)) != only.end())
      {
        criteria[i]();
      }
    }
  }
  catch (const std::exception &e)
  {
    std::printf("internal error: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return 0;
}
