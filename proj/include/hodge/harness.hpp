// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_HARNESS_HPP
#define HODGE_HARNESS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodge/bounds.hpp"
#include "hodge/cech.hpp"
#include "hodge/eigensolve.hpp"
#include "hodge/geometry.hpp"
#include "hodge/mesh.hpp"

namespace hodge
{

// Line-oriented `key = value` configuration with [sections]; list values are comma separated.
//
//   [experiment] id, output, seed, workers
//   [domain]     family (square, disk, annulus, shell, perforated_square, dumbbell, aeps,
//                multi_hole), n, p, outer_radius, hole_radius, extra_radius, sectors, and the
//                grid lists eps, rc, radius, holes
//   [mesh]       h (strictly decreasing ladder)
//   [solver]     degree, k, tol, max_iterations
//   [cover]      kind (none, dumbbell, case2, shell_split, power, sphere), margin, r0_coeff,
//                level, separation_divisor, split, overlap, glue
//   [analysis]   slope_x (eps, rc, radius, holes), test_form
struct ExperimentConfig
{
  std::string id = "experiment";
  std::string output = "results";
  std::uint64_t seed = 1;
  int workers = 0;  // 0: hardware concurrency

  std::string family = "square";
  int n = 2;
  int p = 0;
  double outer_radius = 2.0;
  double hole_radius = 1.0;
  double extra_radius = 0.05;
  int sectors = 32;
  std::vector<double> eps;
  std::vector<double> rc;
  std::vector<double> radius;
  std::vector<int> holes;

  std::vector<double> h;

  int degree = 1;  // exact eigenvalue degree
  int k = 1;
  double tol = 1e-8;
  int max_iterations = 2000;

  std::string cover = "none";
  double margin = 0.0;  // 0: the cover's default
  double r0_coeff = 0.25;
  int level = 1;
  double separation_divisor = 0.0;
  double split = 0.0;
  double overlap = 0.0;
  bool glue = false;

  std::string slope_x;
  bool test_form = false;

  static ExperimentConfig parse(const std::string &text);
  static ExperimentConfig load(const std::string &path);
  std::string format() const;
  void validate() const;
};

// One grid point; unset grid lists contribute their default.
struct GridPoint
{
  double eps = 0.0;
  double rc = 0.0;
  double radius = 0.0;
  int holes = 1;
  double get(const std::string &name) const;
};

std::vector<GridPoint> grid(const ExperimentConfig &cfg);

// A meshed instance with its optional exact domain description.
struct Instance
{
  std::unique_ptr<SimplicialMesh> mesh;
  std::optional<DomainSpec> domain;
};

Instance build_instance(const ExperimentConfig &cfg, const GridPoint &g, double h);
// Cover of the instance for the configured kind; nullopt for kind none.
std::optional<Cover> build_cover(const ExperimentConfig &cfg, const GridPoint &g,
                                 const Instance &inst);

struct SweepRow
{
  GridPoint point;
  double h = 0.0;
  int vertices = 0;
  std::vector<double> eigenvalues;  // exact degree-eigenvalues, ascending
  double residual = 0.0;            // max relative eigen-residual
  std::vector<BoundReport> bounds;
  std::vector<std::pair<std::string, double>> values;  // named diagnostics
  double seconds = 0.0;
  std::string error;

  double value(const std::string &name) const;  // NaN when absent
};

struct SlopeFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points = 0;
};

// Least-squares line through (log x, log y).
SlopeFit slope_fit(const std::vector<double> &x, const std::vector<double> &y);

struct InequalityCheck
{
  std::string bound;
  std::string instance;
  double lambda = 0.0;  // lower estimate used in the comparison
  double value = 0.0;   // bound value
  double margin = 0.0;  // lambda / value
  bool extrapolated = false;
  bool pass = false;
};

struct SweepResult
{
  ExperimentConfig config;
  std::vector<SweepRow> rows;  // grid-major, h ladder inner, in configuration order
  std::map<std::string, SlopeFit> slopes;
  std::vector<InequalityCheck> checks;
};

SweepResult run(const ExperimentConfig &cfg);

// Explicit-constant bounds against the computed eigenvalue they bound. With a ladder of at least
// three levels the lower of the finest value and its h^2 extrapolation is used.
std::vector<InequalityCheck> verify_inequalities(const SweepResult &result);

std::string sweep_csv(const SweepResult &result);
std::string checks_csv(const std::vector<InequalityCheck> &checks);
std::string report_markdown(const SweepResult &result);
// Log-log polyline of the first eigenvalue at the finest h against slope_x.
std::string sweep_svg(const SweepResult &result);
// Writes config.ini, results.csv, checks.csv, report.md and (with a slope axis) plot.svg into
// <output>/<id>; returns the directory.
std::string persist(const SweepResult &result);

}  // namespace hodge

#endif  // HODGE_HARNESS_HPP
