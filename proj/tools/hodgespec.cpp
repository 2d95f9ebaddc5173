// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command line front end: mesh, spectrum, bounds, partition, sweep, verify.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hodge/bounds.hpp"
#include "hodge/dec.hpp"
#include "hodge/eigensolve.hpp"
#include "hodge/geometry.hpp"
#include "hodge/harness.hpp"

using namespace hodge;

namespace
{

struct InstanceArgs
{
  std::string config;
  std::string family = "square";
  int n = 2;
  int p = 0;
  double eps = 0.1;
  double rc = 0.0;
  double radius = 0.0;
  int holes = 1;
  double outer_radius = 2.0;
  double hole_radius = 1.0;
  double h = 0.1;
  int degree = 1;
  int k = 6;
  double tol = 1e-8;

  void add(CLI::App *app)
  {
    app->add_option("--config", config, "Take the domain from a config file (first grid point)");
    app->add_option("--family", family, "square, disk, annulus, shell, perforated_square, "
                                        "dumbbell, aeps, multi_hole");
    app->add_option("--n", n, "Dimension");
    app->add_option("--p", p, "Family degree parameter");
    app->add_option("--eps", eps, "Family parameter");
    app->add_option("--rc", rc, "Annulus contact radius (offset hole)");
    app->add_option("--radius", radius, "Perforation radius");
    app->add_option("--holes", holes, "Hole count for multi_hole");
    app->add_option("--outer-radius", outer_radius, "Annulus outer radius");
    app->add_option("--hole-radius", hole_radius, "Annulus hole radius");
    app->add_option("--mesh-size", h, "Mesh size");
    app->add_option("--degree", degree, "Exact eigenvalue degree");
    app->add_option("--k", k, "Number of eigenvalues");
    app->add_option("--tol", tol, "Solver tolerance");
  }

  std::pair<ExperimentConfig, GridPoint> resolve() const
  {
    ExperimentConfig cfg;
    if (!config.empty())
    {
      cfg = ExperimentConfig::load(config);
      return {cfg, grid(cfg).front()};
    }
    cfg.family = family;
    cfg.n = n;
    cfg.p = p;
    cfg.outer_radius = outer_radius;
    cfg.hole_radius = hole_radius;
    cfg.h = {h};
    cfg.degree = degree;
    cfg.k = k;
    cfg.tol = tol;
    if (family == "dumbbell" || family == "aeps" || family == "multi_hole")
    {
      cfg.eps = {eps};
    }
    if (rc > 0.0)
    {
      cfg.rc = {rc};
    }
    if (family == "multi_hole")
    {
      cfg.holes = {holes};
    }
    if (radius > 0.0)
    {
      cfg.radius = {radius};
    }
    cfg.validate();
    return {cfg, grid(cfg).front()};
  }
};

void write_file(const std::string &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  HODGE_REQUIRE(out.good(), ErrorCode::Io, fmt::format("cannot write {}", path));
  out << text;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Hodge spectra of perforated and thin domains"};
  app.require_subcommand(1);

  InstanceArgs mesh_args;
  std::string mesh_out, mesh_off;
  auto *mesh_cmd = app.add_subcommand("mesh", "Generate a mesh and print its statistics");
  mesh_args.add(mesh_cmd);
  mesh_cmd->add_option("--out", mesh_out, "Write the mesh in the native text format");
  mesh_cmd->add_option("--off", mesh_off, "Write the boundary surface as OFF");

  InstanceArgs spec_args;
  std::string spec_csv;
  auto *spec_cmd = app.add_subcommand("spectrum", "Solve one instance");
  spec_args.add(spec_cmd);
  spec_cmd->add_option("--csv", spec_csv, "Write eigenpairs as CSV");

  InstanceArgs bound_args;
  std::string bound_csv;
  auto *bound_cmd = app.add_subcommand("bounds", "Evaluate the bound factors of a domain");
  bound_args.add(bound_cmd);
  bound_cmd->add_option("--csv", bound_csv, "Write the table as CSV");

  InstanceArgs part_args;
  double margin_factor = 0.25;
  auto *part_cmd = app.add_subcommand("partition", "Power diagram and ordering hypothesis");
  part_args.add(part_cmd);
  part_cmd->add_option("--margin-factor", margin_factor, "Fattening as a fraction of RP");

  std::string sweep_config;
  std::string sweep_output;
  auto *sweep_cmd = app.add_subcommand("sweep", "Run a config and persist its results");
  sweep_cmd->add_option("config", sweep_config, "Config file")->required();
  sweep_cmd->add_option("--output", sweep_output, "Override the output directory");

  std::string verify_config;
  auto *verify_cmd = app.add_subcommand("verify", "Run a config and print its inequality table");
  verify_cmd->add_option("config", verify_config, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*mesh_cmd)
    {
      auto [cfg, g] = mesh_args.resolve();
      const Instance inst = build_instance(cfg, g, cfg.h.front());
      const SimplicialMesh &m = *inst.mesh;
      validate(m);
      std::string counts, bettis;
      for (int p = 0; p <= m.dim(); p++)
      {
        counts += fmt::format("{}{}", p ? " " : "", m.count(p));
      }
      for (int b : betti_numbers(m))
      {
        bettis += fmt::format("{}{}", bettis.empty() ? "" : " ", b);
      }
      fmt::print("dim {}\nsimplices {}\nh {:.6g}\nvolume {:.10g}\nbetti {}\neuler {}\n", m.dim(),
                 counts, m.h(), m.volume(), bettis, m.euler_characteristic());
      if (!mesh_out.empty())
      {
        export_mesh(m, mesh_out);
      }
      if (!mesh_off.empty())
      {
        export_off(m, mesh_off);
      }
    }
    else if (*spec_cmd)
    {
      auto [cfg, g] = spec_args.resolve();
      const Instance inst = build_instance(cfg, g, cfg.h.front());
      SolverOptions opt;
      opt.tol = cfg.tol;
      opt.max_iterations = cfg.max_iterations;
      opt.seed = cfg.seed;
      const SpectralPencil pencil = up_pencil(*inst.mesh, cfg.degree - 1);
      const SpectrumResult r = smallest_positive(pencil, cfg.k, opt);
      fmt::print("vertices {}  harmonic {}  iterations {}\n", inst.mesh->count(0), r.harmonic_dim,
                 r.iterations);
      for (std::size_t i = 0; i < r.eigenvalues.size(); i++)
      {
        fmt::print("lambda_{} = {:.10g}  (residual {:.2e})\n", i + 1, r.eigenvalues[i],
                   r.residuals[i]);
      }
      if (!spec_csv.empty())
      {
        write_spectrum_csv(r, spec_csv);
      }
    }
    else if (*bound_cmd)
    {
      auto [cfg, g] = bound_args.resolve();
      const Instance inst = build_instance(cfg, g, cfg.h.front());
      HODGE_REQUIRE(inst.domain.has_value(), ErrorCode::MissingData,
                    fmt::format("family {} has no domain description", cfg.family));
      const GeometricMeasures gm = measure(*inst.domain);
      fmt::print("D {:.6g}  Rc {:.6g}  r_c {:.6g}  d_h {:.6g}  Rc_hat {:.6g}  Rh [{:.6g}, {:.6g}]  "
                 "RP {:.6g}\n",
                 gm.D, gm.Rc, gm.r_c, gm.d_h, gm.Rc_hat, gm.Rh_min, gm.Rh_max, gm.RP);
      const auto rows = bound_table(*inst.domain, cfg.degree);
      fmt::print("{}", bound_table_text(rows));
      if (!bound_csv.empty())
      {
        write_file(bound_csv, bound_table_csv(rows));
      }
    }
    else if (*part_cmd)
    {
      auto [cfg, g] = part_args.resolve();
      const Instance inst = build_instance(cfg, g, cfg.h.front());
      HODGE_REQUIRE(inst.domain.has_value(), ErrorCode::MissingData,
                    fmt::format("family {} has no domain description", cfg.family));
      const PowerPartition part = power_diagram(*inst.domain, margin_factor);
      double total = 0.0;
      for (std::size_t i = 0; i < part.cells.size(); i++)
      {
        const auto &c = part.cells[i];
        total += c.volume;
        fmt::print("cell {}  volume {:.10g}  contact radius {:.6g}{}\n", i, c.volume,
                   c.contact_radius, c.empty ? "  (empty)" : "");
      }
      fmt::print("total volume {:.10g}  domain volume {:.10g}\n", total,
                 domain_volume(*inst.domain));
      std::string counts;
      for (int k : part.intersection_counts)
      {
        counts += fmt::format("{}{}", counts.empty() ? "" : " ", k);
      }
      fmt::print("margin {:.6g}  intersection counts {}\n", part.margin, counts);
      const HypothesisResult hyp = hypothesis_order(part);
      std::string order;
      for (int i : hyp.order)
      {
        order += fmt::format("{}{}", order.empty() ? "" : " ", i);
      }
      fmt::print("ordering hypothesis {}  order [{}]\n", hyp.ok ? "holds" : "fails", order);
    }
    else if (*sweep_cmd)
    {
      ExperimentConfig cfg = ExperimentConfig::load(sweep_config);
      if (!sweep_output.empty())
      {
        cfg.output = sweep_output;
      }
      const SweepResult res = run(cfg);
      const std::string dir = persist(res);
      int errors = 0;
      for (const auto &r : res.rows)
      {
        errors += r.error.empty() ? 0 : 1;
      }
      fmt::print("{} rows ({} with errors) written to {}\n", res.rows.size(), errors, dir);
      for (const auto &[name, f] : res.slopes)
      {
        fmt::print("slope {} = {:.4f} +- {:.4f} over {} points\n", name, f.slope, f.stderr_slope,
                   f.points);
      }
    }
    else if (*verify_cmd)
    {
      const SweepResult res = run(ExperimentConfig::load(verify_config));
      bool ok = true;
      for (const auto &c : res.checks)
      {
        fmt::print("{:<6} {:<20} {:<32} lambda {:.6g}  bound {:.6g}  margin {:.3g}\n",
                   c.pass ? "pass" : "FAIL", c.bound, c.instance, c.lambda, c.value, c.margin);
        ok = ok && c.pass;
      }
      for (const auto &r : res.rows)
      {
        if (!r.error.empty())
        {
          fmt::print("error at h = {}: {}\n", r.h, r.error);
        }
      }
      return ok ? 0 : 1;
    }
  }
  catch (const Error &e)
  {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
