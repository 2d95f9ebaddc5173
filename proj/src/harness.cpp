// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "csv.hpp"
#include "hodge/dec.hpp"
#include "hodge/families.hpp"
#include "hodge/meshgen.hpp"

namespace hodge
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return fmt::format("{:.10g}", v); }

std::string point_name(const ExperimentConfig &cfg, const GridPoint &g)
{
  std::string s = cfg.family;
  if (!cfg.eps.empty())
  {
    s += fmt::format(" eps={}", g.eps);
  }
  if (!cfg.rc.empty())
  {
    s += fmt::format(" rc={}", g.rc);
  }
  if (!cfg.radius.empty())
  {
    s += fmt::format(" r={}", g.radius);
  }
  if (!cfg.holes.empty())
  {
    s += fmt::format(" holes={}", g.holes);
  }
  return s;
}

DomainSpec annulus_spec(const ExperimentConfig &cfg, const GridPoint &g, int n)
{
  DomainSpec spec = DomainSpec::ball(n, Point::Zero(), cfg.outer_radius);
  double offset = 0.0;
  if (!cfg.rc.empty())
  {
    offset = cfg.outer_radius - cfg.hole_radius - g.rc;
    HODGE_REQUIRE(offset >= 0.0, ErrorCode::InvalidArgument,
                  fmt::format("contact radius {} exceeds the concentric value", g.rc));
  }
  spec.add_hole(Point(offset, 0.0, 0.0), cfg.hole_radius);
  validate(spec);
  return spec;
}

FamilySpec family_of(const ExperimentConfig &cfg, const GridPoint &g)
{
  FamilySpec f;
  f.id = FamilyId::Aeps;
  f.n = cfg.n;
  f.p = cfg.p;
  f.eps = g.eps;
  f.sectors = cfg.sectors;
  return f;
}

SolverOptions solver_options(const ExperimentConfig &cfg)
{
  SolverOptions opt;
  opt.tol = cfg.tol;
  opt.max_iterations = cfg.max_iterations;
  opt.seed = cfg.seed;
  return opt;
}

bool gluing_cover(const std::string &kind)
{
  return kind == "shell_split" || kind == "power" || kind == "sphere" || kind == "dumbbell" ||
         kind == "case2";
}

SweepRow run_row(const ExperimentConfig &cfg, const GridPoint &g, double h)
{
  SweepRow row;
  row.point = g;
  row.h = h;
  const auto start = std::chrono::steady_clock::now();
  try
  {
    const SolverOptions opt = solver_options(cfg);
    const Instance inst = build_instance(cfg, g, h);
    const SimplicialMesh &mesh = *inst.mesh;
    row.vertices = mesh.count(0);
    const int p = cfg.degree;

    std::optional<Cover> cover = build_cover(cfg, g, inst);
    std::optional<PartitionOfUnity> pou;
    int k_p = 0;
    if (cover)
    {
      pou = partition_of_unity(*cover, cfg.margin);
      k_p = static_cast<int>(cover->of_order(p + 1).size());
      row.values.emplace_back("k0", cover->size());
      row.values.emplace_back("k_p", k_p);
      row.values.emplace_back("c_rho", pou->c_rho);
    }
    const int want = std::max(cfg.k, cover ? 1 + k_p : 1);
    const SpectralPencil pencil = up_pencil(mesh, p - 1);
    const SpectrumResult spec = smallest_positive(pencil, want, opt);
    row.eigenvalues = spec.eigenvalues;
    row.residual = spec.tolerance;
    row.values.emplace_back("harmonic_dim", spec.harmonic_dim);

    if (inst.domain)
    {
      try
      {
        row.bounds = bound_table(*inst.domain, p);
      }
      catch (const Error &)
      {
        // Degrees outside a bound's range contribute no factor.
      }
    }
    if (cover)
    {
      if ((cfg.cover == "dumbbell" || cfg.cover == "case2") && p == 1 && cover->size() == 2)
      {
        const double mu1 = first_exact_eigenvalue(cover->piece({0}).mesh, 1, opt);
        const double mu2 = first_exact_eigenvalue(cover->piece({1}).mesh, 1, opt);
        const double vi = cover->volume({0, 1});
        const double vt = mesh.volume();
        row.values.emplace_back("mu1_U1", mu1);
        row.values.emplace_back("mu1_U2", mu2);
        row.values.emplace_back("vol_U12", vi);
        row.values.emplace_back("vol_M", vt);
        row.bounds.push_back(union_neumann_bound(vi, vt, mu1, mu2));
      }
      if (gluing_cover(cfg.cover) && p <= 3)
      {
        row.bounds.push_back(mcgowan_bounds(mcgowan_input(*cover, *pou, p, opt)));
      }
      if (cfg.glue)
      {
        const GluedResult gl = glued_primitive(mesh, *cover, *pou, p, opt);
        row.values.emplace_back("glued_quotient", gl.quotient);
        row.values.emplace_back("glued_residual", gl.residual);
      }
    }
    if (cfg.test_form && cfg.family == "aeps")
    {
      const Cochain w = de_rham_sample(mesh, test_form(cfg.n, cfg.p, g.eps));
      const SparseMatrix D = coboundary(mesh, cfg.p);
      const Vector dw = D * w.values;
      const double numerator = dw.dot(mass_matrix(mesh, cfg.p + 1) * dw);
      const double denominator = w.values.dot(mass_matrix(mesh, cfg.p) * w.values);
      row.values.emplace_back("test_numerator", numerator);
      row.values.emplace_back("test_rq", numerator / denominator);
    }
  }
  catch (const std::exception &e)
  {
    row.error = e.what();
  }
  row.seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

int bound_eigen_index(const BoundReport &b, const SweepRow &row)
{
  if (b.index == "1")
  {
    return 0;
  }
  if (b.index.rfind("1+k", 0) == 0)
  {
    const double k = row.value("k_p");
    return std::isnan(k) ? -1 : static_cast<int>(k);
  }
  return -1;
}

}  // namespace

double GridPoint::get(const std::string &name) const
{
  if (name == "eps")
  {
    return eps;
  }
  if (name == "rc")
  {
    return rc;
  }
  if (name == "radius")
  {
    return radius;
  }
  if (name == "holes")
  {
    return holes;
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown grid parameter '{}'", name));
}

std::vector<GridPoint> grid(const ExperimentConfig &cfg)
{
  const std::vector<double> eps = cfg.eps.empty() ? std::vector<double>{0.0} : cfg.eps;
  const std::vector<double> rc = cfg.rc.empty() ? std::vector<double>{0.0} : cfg.rc;
  const std::vector<double> radius = cfg.radius.empty() ? std::vector<double>{0.0} : cfg.radius;
  const std::vector<int> holes = cfg.holes.empty() ? std::vector<int>{1} : cfg.holes;
  std::vector<GridPoint> out;
  for (double e : eps)
  {
    for (double c : rc)
    {
      for (double r : radius)
      {
        for (int k : holes)
        {
          out.push_back({e, c, r, k});
        }
      }
    }
  }
  return out;
}

Instance build_instance(const ExperimentConfig &cfg, const GridPoint &g, double h)
{
  Instance inst;
  const std::string &f = cfg.family;
  if (f == "square" || f == "perforated_square")
  {
    HODGE_REQUIRE(cfg.n == 2, ErrorCode::InvalidArgument, "square families are planar");
    DomainSpec spec = DomainSpec::box(2, Point::Zero(), Point(1.0, 1.0, 0.0));
    if (f == "perforated_square" && g.radius > 0.0)
    {
      spec.add_hole(Point(0.5, 0.5, 0.0), g.radius);
    }
    Mesh2dOptions opt;
    opt.h = h;
    opt.seed = cfg.seed;
    if (f == "perforated_square" && g.radius > 0.0)
    {
      const double r = g.radius;
      opt.size = [r, h](const Point &x) {
        return std::max(0.25 * r, std::min(h, 0.5 * r + 0.3 * ((x - Point(0.5, 0.5, 0.0)).norm() - r)));
      };
    }
    inst.mesh = std::make_unique<SimplicialMesh>(mesh2d(boundary_of(spec), opt));
    inst.domain = spec;
  }
  else if (f == "disk")
  {
    HODGE_REQUIRE(cfg.n == 2, ErrorCode::InvalidArgument, "the disk family is planar");
    const DomainSpec spec = DomainSpec::ball(2, Point::Zero(), 1.0);
    inst.mesh = std::make_unique<SimplicialMesh>(mesh_domain(spec, h));
    inst.domain = spec;
  }
  else if (f == "annulus" || f == "shell")
  {
    const DomainSpec spec = annulus_spec(cfg, g, f == "shell" ? 3 : cfg.n);
    inst.mesh = std::make_unique<SimplicialMesh>(mesh_domain(spec, h));
    inst.domain = spec;
  }
  else if (f == "dumbbell")
  {
    const DumbbellDomain d = dumbbell(cfg.n, g.eps);
    inst.mesh = std::make_unique<SimplicialMesh>(dumbbell_mesh(d, h, cfg.sectors));
  }
  else if (f == "aeps")
  {
    const FamilySpec fam = family_of(cfg, g);
    inst.mesh = std::make_unique<SimplicialMesh>(aeps_mesh(fam, h));
    inst.domain = family_domain(fam);
  }
  else if (f == "multi_hole")
  {
    const MultiHoleDomain d = multi_hole_family(cfg.n, cfg.p, g.holes, g.eps, cfg.extra_radius);
    inst.mesh = std::make_unique<SimplicialMesh>(multi_hole_mesh(d, h));
    inst.domain = d.spec;
  }
  else
  {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown family '{}'", f));
  }
  return inst;
}

std::optional<Cover> build_cover(const ExperimentConfig &cfg, const GridPoint &g,
                                 const Instance &inst)
{
  (void)g;
  const SimplicialMesh &mesh = *inst.mesh;
  const int order = cfg.degree + 1;
  const std::string &kind = cfg.cover;
  if (kind == "none")
  {
    return std::nullopt;
  }
  if (kind == "dumbbell")
  {
    return predicate_cover(mesh, {DumbbellDomain::in_u1, DumbbellDomain::in_u2}, order,
                           cfg.margin > 0.0 ? cfg.margin : 0.5);
  }
  HODGE_REQUIRE(inst.domain.has_value(), ErrorCode::MissingData,
                fmt::format("cover '{}' needs a domain description", kind));
  const DomainSpec &spec = *inst.domain;
  if (kind == "power")
  {
    const PowerPartition part = power_diagram(spec);
    return power_cover(mesh, part,
                       cfg.margin > 0.0 ? cfg.margin : std::max(part.margin, 2.0 * mesh.h()),
                       order);
  }
  HODGE_REQUIRE(spec.holes.size() == 1, ErrorCode::InvalidArgument,
                fmt::format("cover '{}' needs exactly one hole", kind));
  const Point c = spec.holes[0].center;
  const double Rh = spec.holes[0].radius;
  if (kind == "case2")
  {
    const double Rc = measure(spec).Rc;
    HODGE_REQUIRE(Rh < Rc / 2.0, ErrorCode::InvalidArgument,
                  fmt::format("case-2 covers need Rh < Rc/2 (Rh = {}, Rc = {})", Rh, Rc));
    return predicate_cover(
      mesh,
      {[c, Rc](const Point &x) { return (x - c).norm() >= Rc / 2.0; },
       [c, Rc](const Point &x) { return (x - c).norm() <= Rc; }},
      order, cfg.margin > 0.0 ? cfg.margin : Rc / 4.0);
  }
  if (kind == "shell_split")
  {
    HODGE_REQUIRE(spec.outer.kind == OuterBody::Kind::Ball, ErrorCode::InvalidArgument,
                  "shell splits need a ball outer body");
    const double R = spec.outer.radius;
    const double split = cfg.split > 0.0 ? cfg.split : 0.5 * (Rh + R);
    const double overlap = cfg.overlap > 0.0 ? cfg.overlap : 0.2 * (R - Rh);
    return predicate_cover(
      mesh,
      {[c, split, overlap](const Point &x) { return (x - c).norm() <= split + overlap / 2.0; },
       [c, split, overlap](const Point &x) { return (x - c).norm() >= split - overlap / 2.0; }},
      order, cfg.margin > 0.0 ? cfg.margin : overlap / 2.0);
  }
  if (kind == "sphere")
  {
    SphereCoverOptions opt;
    opt.r0_coeff = cfg.r0_coeff;
    opt.level = cfg.level;
    opt.separation_divisor = cfg.separation_divisor;
    opt.max_order = order;
    Cover cover = sphere_cover(mesh, spec, opt);
    if (cfg.margin > 0.0)
    {
      cover.margin = cfg.margin;
    }
    return cover;
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown cover '{}'", kind));
}

double SweepRow::value(const std::string &name) const
{
  for (const auto &[k, v] : values)
  {
    if (k == name)
    {
      return v;
    }
  }
  return kNaN;
}

SlopeFit slope_fit(const std::vector<double> &x, const std::vector<double> &y)
{
  HODGE_REQUIRE(x.size() == y.size(), ErrorCode::InvalidArgument, "x and y sizes differ");
  HODGE_REQUIRE(x.size() >= 2, ErrorCode::InsufficientLevels, "slope fits need two points");
  const int m = static_cast<int>(x.size());
  std::vector<double> lx(m), ly(m);
  for (int i = 0; i < m; i++)
  {
    HODGE_REQUIRE(x[i] > 0.0 && y[i] > 0.0, ErrorCode::InvalidArgument,
                  "log-log fits need positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < m; i++)
  {
    mx += lx[i] / m;
    my += ly[i] / m;
  }
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < m; i++)
  {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  HODGE_REQUIRE(sxx > 0.0, ErrorCode::InvalidArgument, "x values are all equal");
  SlopeFit fit;
  fit.points = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (m > 2)
  {
    double sse = 0.0;
    for (int i = 0; i < m; i++)
    {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      sse += r * r;
    }
    fit.stderr_slope = std::sqrt(sse / (m - 2) / sxx);
  }
  return fit;
}

SweepResult run(const ExperimentConfig &cfg)
{
  cfg.validate();
  const auto points = grid(cfg);
  std::vector<std::vector<SweepRow>> per_point(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++)
    {
      for (double h : cfg.h)
      {
        per_point[i].push_back(run_row(cfg, points[i], h));
      }
    }
  };
  int workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; w++)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool)
  {
    t.join();
  }

  SweepResult res;
  res.config = cfg;
  for (auto &rows : per_point)
  {
    for (auto &r : rows)
    {
      res.rows.push_back(std::move(r));
    }
  }
  if (!cfg.slope_x.empty())
  {
    auto fit = [&](const std::string &name, auto &&get) {
      std::vector<double> xs, ys;
      for (const auto &r : res.rows)
      {
        if (r.h == cfg.h.back() && r.error.empty())
        {
          const double y = get(r);
          if (std::isfinite(y) && y > 0.0)
          {
            xs.push_back(r.point.get(cfg.slope_x));
            ys.push_back(y);
          }
        }
      }
      if (xs.size() >= 4)
      {
        res.slopes[name] = slope_fit(xs, ys);
      }
    };
    fit("lambda1", [](const SweepRow &r) { return r.eigenvalues.empty() ? kNaN : r.eigenvalues[0]; });
    if (cfg.test_form)
    {
      fit("test_rq", [](const SweepRow &r) { return r.value("test_rq"); });
      fit("test_numerator", [](const SweepRow &r) { return r.value("test_numerator"); });
    }
  }
  res.checks = verify_inequalities(res);
  return res;
}

std::vector<InequalityCheck> verify_inequalities(const SweepResult &result)
{
  const ExperimentConfig &cfg = result.config;
  std::vector<InequalityCheck> out;
  std::map<std::string, std::vector<const SweepRow *>> by_point;
  std::vector<std::string> order;
  for (const auto &r : result.rows)
  {
    const std::string name = point_name(cfg, r.point);
    if (!by_point.count(name))
    {
      order.push_back(name);
    }
    if (r.error.empty())
    {
      by_point[name].push_back(&r);
    }
  }
  for (const auto &name : order)
  {
    const auto &rows = by_point[name];
    if (rows.empty())
    {
      continue;
    }
    const SweepRow &fine = *rows.back();
    for (const auto &b : fine.bounds)
    {
      if (!b.explicit_constant)
      {
        continue;
      }
      const int idx = bound_eigen_index(b, fine);
      HODGE_REQUIRE(idx >= 0 && idx < static_cast<int>(fine.eigenvalues.size()),
                    ErrorCode::MissingData,
                    fmt::format("no computed eigenvalue for bound {} on {}", b.id, name));
      InequalityCheck c;
      c.bound = b.id;
      c.instance = name;
      c.value = b.value;
      c.lambda = fine.eigenvalues[idx];
      if (rows.size() >= 3)
      {
        std::vector<double> hs, ls;
        for (const auto *r : rows)
        {
          if (idx < static_cast<int>(r->eigenvalues.size()))
          {
            hs.push_back(r->h);
            ls.push_back(r->eigenvalues[idx]);
          }
        }
        try
        {
          const EnvelopeResult env = eigen_lower_envelope(hs, ls);
          if (env.value < c.lambda)
          {
            c.lambda = env.value;
            c.extrapolated = true;
          }
        }
        catch (const Error &)
        {
          // Non-monotone ladders fall back to the finest value.
        }
      }
      c.margin = c.lambda / c.value;
      c.pass = c.lambda >= c.value;
      out.push_back(c);
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult &result)
{
  std::set<std::string> value_keys;
  std::vector<std::string> bound_keys;
  std::size_t max_eigs = 0;
  for (const auto &r : result.rows)
  {
    for (const auto &[k, v] : r.values)
    {
      value_keys.insert(k);
    }
    for (const auto &b : r.bounds)
    {
      if (std::find(bound_keys.begin(), bound_keys.end(), b.id) == bound_keys.end())
      {
        bound_keys.push_back(b.id);
      }
    }
    max_eigs = std::max(max_eigs, r.eigenvalues.size());
  }
  std::vector<std::string> head = {"eps", "rc", "radius", "holes", "h", "vertices"};
  for (std::size_t i = 0; i < max_eigs; i++)
  {
    head.push_back(fmt::format("lambda_{}", i + 1));
  }
  head.push_back("residual");
  for (const auto &k : bound_keys)
  {
    head.push_back("bound_" + k);
  }
  for (const auto &k : value_keys)
  {
    head.push_back(k);
  }
  head.push_back("seconds");
  head.push_back("error");
  std::string out = csv_row(head);
  for (const auto &r : result.rows)
  {
    std::vector<std::string> f = {num(r.point.eps), num(r.point.rc), num(r.point.radius),
                                  std::to_string(r.point.holes), num(r.h),
                                  std::to_string(r.vertices)};
    for (std::size_t i = 0; i < max_eigs; i++)
    {
      f.push_back(i < r.eigenvalues.size() ? fmt::format("{:.17g}", r.eigenvalues[i]) : "");
    }
    f.push_back(fmt::format("{:.3e}", r.residual));
    for (const auto &k : bound_keys)
    {
      std::string cell;
      for (const auto &b : r.bounds)
      {
        if (b.id == k)
        {
          cell = fmt::format("{:.17g}", b.value);
        }
      }
      f.push_back(cell);
    }
    for (const auto &k : value_keys)
    {
      const double v = r.value(k);
      f.push_back(std::isnan(v) ? "" : fmt::format("{:.17g}", v));
    }
    f.push_back(fmt::format("{:.3f}", r.seconds));
    f.push_back(r.error);
    out += csv_row(f);
  }
  return out;
}

std::string checks_csv(const std::vector<InequalityCheck> &checks)
{
  std::string out =
    csv_row({"instance", "bound", "lambda", "bound_value", "margin", "extrapolated", "pass"});
  for (const auto &c : checks)
  {
    out += csv_row({c.instance, c.bound, fmt::format("{:.17g}", c.lambda),
                    fmt::format("{:.17g}", c.value), fmt::format("{:.6g}", c.margin),
                    c.extrapolated ? "true" : "false", c.pass ? "true" : "false"});
  }
  return out;
}

std::string report_markdown(const SweepResult &result)
{
  const ExperimentConfig &cfg = result.config;
  std::string s = fmt::format("# {}\n\n", cfg.id);
  s += "## Configuration\n\n```ini\n" + cfg.format() + "```\n\n";
  s += "## Rows\n\n| instance | h | vertices | lambda_1 | residual | seconds | error |\n"
       "|---|---|---|---|---|---|---|\n";
  for (const auto &r : result.rows)
  {
    s += fmt::format("| {} | {} | {} | {} | {:.1e} | {:.2f} | {} |\n", point_name(cfg, r.point),
                     r.h, r.vertices, r.eigenvalues.empty() ? "-" : num(r.eigenvalues[0]),
                     r.residual, r.seconds, r.error);
  }
  s += "\n## Bounds at the finest h\n\n| instance | bound | eigenvalue index | value | constant |\n"
       "|---|---|---|---|---|\n";
  for (const auto &r : result.rows)
  {
    if (r.h != cfg.h.back())
    {
      continue;
    }
    for (const auto &b : r.bounds)
    {
      s += fmt::format("| {} | {} | {} | {:.6e} | {} |\n", point_name(cfg, r.point), b.id,
                       b.index, b.value, b.explicit_constant ? "explicit" : "K omitted");
    }
  }
  if (!result.slopes.empty())
  {
    s += fmt::format("\n## Log-log slopes against {}\n\n| quantity | slope | stderr | points |\n"
                     "|---|---|---|---|\n",
                     cfg.slope_x);
    for (const auto &[name, f] : result.slopes)
    {
      s += fmt::format("| {} | {:.4f} | {:.4f} | {} |\n", name, f.slope, f.stderr_slope, f.points);
    }
  }
  if (!result.checks.empty())
  {
    s += "\n## Inequality checks\n\n"
         "Conforming discretizations overestimate eigenvalues, so comparisons use the lower of the "
         "finest computed value and its h^2 extrapolation when three or more levels exist.\n\n"
         "| instance | bound | lambda | bound value | margin | result |\n|---|---|---|---|---|---|\n";
    for (const auto &c : result.checks)
    {
      s += fmt::format("| {} | {} | {} | {:.6e} | {:.3g} | {} |\n", c.instance, c.bound,
                       num(c.lambda), c.value, c.margin, c.pass ? "pass" : "FAIL");
    }
  }
  return s;
}

std::string sweep_svg(const SweepResult &result)
{
  const ExperimentConfig &cfg = result.config;
  std::vector<std::pair<double, double>> pts;
  for (const auto &r : result.rows)
  {
    if (!cfg.slope_x.empty() && r.h == cfg.h.back() && r.error.empty() && !r.eigenvalues.empty())
    {
      const double x = r.point.get(cfg.slope_x);
      if (x > 0.0 && r.eigenvalues[0] > 0.0)
      {
        pts.emplace_back(std::log10(x), std::log10(r.eigenvalues[0]));
      }
    }
  }
  const double W = 640, H = 420, L = 70, B = 50, T = 30, R = 20;
  std::string s = fmt::format(
    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
    "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
    W, H);
  s += fmt::format("<text x=\"{}\" y=\"20\">{}: log10 lambda_1 vs log10 {}</text>\n", L, cfg.id,
                   cfg.slope_x);
  if (pts.size() < 2)
  {
    return s + "</svg>\n";
  }
  std::sort(pts.begin(), pts.end());
  double x0 = pts.front().first, x1 = pts.back().first;
  double y0 = pts[0].second, y1 = pts[0].second;
  for (const auto &[x, y] : pts)
  {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (y1 - y0 < 1e-12)
  {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - B - T); };
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B,
                   W - R, H - B);
  s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L,
                   H - B);
  s += fmt::format("<text x=\"{}\" y=\"{}\">{:.3g}</text>\n", L, H - B + 18, x0);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", W - R, H - B + 18, x1);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", L - 6, H - B, y0);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", L - 6, T + 10, y1);
  std::string poly;
  for (const auto &[x, y] : pts)
  {
    poly += fmt::format("{:.2f},{:.2f} ", px(x), py(y));
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"steelblue\"/>\n", px(x), py(y));
  }
  s += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"" + poly + "\"/>\n";
  auto it = result.slopes.find("lambda1");
  if (it != result.slopes.end())
  {
    s += fmt::format("<text x=\"{}\" y=\"{}\">slope {:.3f} +- {:.3f}</text>\n", L + 10, T + 14,
                     it->second.slope, it->second.stderr_slope);
  }
  return s + "</svg>\n";
}

std::string persist(const SweepResult &result)
{
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(result.config.output) / result.config.id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  HODGE_REQUIRE(!ec, ErrorCode::Io, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  auto write = [&](const std::string &name, const std::string &text) {
    std::ofstream out(dir / name, std::ios::binary);
    HODGE_REQUIRE(out.good(), ErrorCode::Io, fmt::format("cannot write {}", (dir / name).string()));
    out << text;
  };
  write("config.ini", result.config.format());
  write("results.csv", sweep_csv(result));
  write("checks.csv", checks_csv(result.checks));
  write("report.md", report_markdown(result));
  if (!result.config.slope_x.empty())
  {
    write("plot.svg", sweep_svg(result));
  }
  return dir.string();
}

}  // namespace hodge
