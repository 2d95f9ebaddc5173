// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "csv.hpp"

namespace hodge
{

namespace
{

void require_positive(std::initializer_list<std::pair<const char *, double>> xs)
{
  for (const auto &[name, v] : xs)
  {
    HODGE_REQUIRE(v > 0.0 && std::isfinite(v), ErrorCode::InvalidArgument,
                  fmt::format("{} must be positive and finite, got {}", name, v));
  }
}

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

// (1/D^2) (Rc/D)^{n-2} min{1, (Rc/D)^{3n+2} (Rc/Rh)^{7n-5}}
double p1_core(int n, double D, double Rc, double Rh)
{
  return std::pow(Rc / D, n - 2) / (D * D) *
         std::min(1.0, std::pow(Rc / D, 3 * n + 2) * std::pow(Rc / Rh, 7 * n - 5));
}

double min_hole(double R, double Rh, int n) { return std::min(1.0, std::pow(R / Rh, 3 * (n - 1) * (n + 1))); }

}  // namespace

double BoundReport::input(const std::string &name) const
{
  for (const auto &[k, v] : inputs)
  {
    if (k == name)
    {
      return v;
    }
  }
  throw Error(ErrorCode::MissingData, "bound report has no input '" + name + "'");
}

BoundReport annulus_factor(int n, int p, double D, double Rc, double Rh)
{
  HODGE_REQUIRE(n >= 2, ErrorCode::InvalidArgument, "n must be at least 2");
  HODGE_REQUIRE(p >= 1 && p <= n - 1, ErrorCode::InvalidArgument, "need 1 <= p <= n - 1");
  require_positive({{"D", D}, {"Rc", Rc}, {"Rh", Rh}});
  HODGE_REQUIRE(Rc <= D, ErrorCode::InvalidArgument, "contact radius exceeds the diameter");
  BoundReport r;
  r.degree = p;
  r.inputs = {{"n", n}, {"p", p}, {"D", D}, {"Rc", Rc}, {"Rh", Rh}};
  if (p == 1)
  {
    r.id = "annulus_p1";
    r.value = p1_core(n, D, Rc, Rh);
    r.formula = "(1/D^2)(Rc/D)^(n-2) min{1, (Rc/D)^(3n+2) (Rc/Rh)^(7n-5)}";
  }
  else
  {
    r.id = "annulus_p2";
    r.value = std::pow(Rc / D, 2 * n * n - n - 2) / (D * D) * min_hole(Rc, Rh, n);
    r.formula = "(1/D^2)(Rc/D)^(2n^2-n-2) min{1, (Rc/Rh)^(3(n-1)(n+1))}";
  }
  return r;
}

BoundReport union_neumann_bound(double vol_intersection, double vol_total, double mu1_u1,
                                double mu1_u2)
{
  HODGE_REQUIRE(vol_total > 0.0 && vol_intersection >= 0.0 && vol_intersection <= vol_total,
                ErrorCode::InvalidArgument, "need 0 <= vol(U1 n U2) <= vol(M), vol(M) > 0");
  HODGE_REQUIRE(mu1_u1 > 0.0 && mu1_u2 > 0.0, ErrorCode::InvalidArgument,
                "piece eigenvalues must be positive");
  HODGE_REQUIRE(!(std::isinf(mu1_u1) && std::isinf(mu1_u2)), ErrorCode::InvalidArgument,
                "at least one piece eigenvalue must be finite");
  BoundReport r;
  r.id = "union_neumann";
  r.explicit_constant = true;
  r.degree = 1;
  r.inputs = {{"vol_intersection", vol_intersection},
              {"vol_total", vol_total},
              {"mu1_U1", mu1_u1},
              {"mu1_U2", mu1_u2}};
  r.value = vol_intersection / (32.0 * vol_total) * std::min(mu1_u1, mu1_u2);
  r.formula = "(1/32) vol(U1 n U2)/vol(M) min{mu1(U1), mu1(U2)}";
  return r;
}

double mcgowan_aleph(const McGowanInput &in)
{
  const int k0 = static_cast<int>(in.piece.size());
  HODGE_REQUIRE(in.p == 3, ErrorCode::InvalidArgument, "aleph is the p = 3 denominator");
  HODGE_REQUIRE(static_cast<int>(in.pair.size()) == k0 * k0 &&
                  static_cast<int>(in.triple.size()) == k0 * k0 * k0,
                ErrorCode::MissingData, "p = 3 needs pair and triple intersection data");
  const double c = in.c_rho;
  auto L = [&](int i) { return inv(in.piece[i]); };
  auto L2 = [&](int i, int j) { return in.pair[i * k0 + j]; };
  double total = 0.0;
  for (int i = 0; i < k0; i++)
  {
    double inner = L(i);
    for (int j = 0; j < k0; j++)
    {
      inner += (c * inv(L2(i, j)) + 1.0) * (L(i) + L(j));
      for (int k = 0; k < k0; k++)
      {
        const double t = in.triple[(i * k0 + j) * k0 + k];
        const double braces = (L(i) + L(j)) * inv(L2(i, j)) + (L(j) + L(k)) * inv(L2(j, k)) +
                              (L(i) + L(k)) * inv(L2(i, k));
        inner += c * (c * inv(t) + 1.0) * braces;
      }
    }
    total += inner;
  }
  return total;
}

BoundReport mcgowan_bounds(const McGowanInput &in)
{
  const int k0 = static_cast<int>(in.piece.size());
  HODGE_REQUIRE(k0 >= 1, ErrorCode::MissingData, "no cover elements");
  HODGE_REQUIRE(in.p >= 1 && in.p <= 3, ErrorCode::InvalidArgument, "p must be 1, 2 or 3");
  HODGE_REQUIRE(in.c_rho >= 0.0, ErrorCode::InvalidArgument, "c_rho must be non-negative");
  for (double l : in.piece)
  {
    HODGE_REQUIRE(l > 0.0, ErrorCode::InvalidArgument, "piece eigenvalues must be positive");
  }
  BoundReport r;
  r.explicit_constant = true;
  r.degree = in.p;
  r.index = "1+k_" + std::to_string(in.p);
  r.inputs = {{"p", in.p}, {"k0", k0}, {"c_rho", in.c_rho}};
  if (in.p == 1)
  {
    double s = 0.0;
    for (double l : in.piece)
    {
      s += inv(l);
    }
    r.id = "mcgowan_p1";
    r.value = 1.0 / s;
    r.formula = "1 / sum_i 1/lambda''_1(U_i)";
    return r;
  }
  HODGE_REQUIRE(static_cast<int>(in.pair.size()) == k0 * k0, ErrorCode::MissingData,
                "pair intersection eigenvalues missing");
  for (double l : in.pair)
  {
    HODGE_REQUIRE(l > 0.0, ErrorCode::InvalidArgument, "intersection eigenvalues must be positive");
  }
  if (in.p == 2)
  {
    double s = 0.0;
    for (int i = 0; i < k0; i++)
    {
      s += inv(in.piece[i]);
      for (int j = 0; j < k0; j++)
      {
        s += (in.c_rho * inv(in.pair[i * k0 + j]) + 1.0) * (inv(in.piece[i]) + inv(in.piece[j]));
      }
    }
    r.id = "mcgowan_p2";
    r.value = 1.0 / (8.0 * k0 * s);
    r.formula = "(8 k0)^-1 / sum_i {1/l_i + sum_j (c/l_ij + 1)(1/l_i + 1/l_j)}";
    return r;
  }
  r.id = "mcgowan_p3";
  const double aleph = mcgowan_aleph(in);
  r.inputs.emplace_back("aleph", aleph);
  r.value = 1.0 / (18.0 * k0 * k0 * aleph);
  r.formula = "(18 k0^2)^-1 / aleph";
  return r;
}

BoundReport modified_mcgowan_factor(double lam_u1, double lam_u2, double lam_u12, double c_rho)
{
  HODGE_REQUIRE(lam_u1 > 0.0 && lam_u2 > 0.0 && lam_u12 > 0.0 && c_rho >= 0.0,
                ErrorCode::InvalidArgument, "inputs must be positive");
  BoundReport r;
  r.id = "modified_mcgowan";
  r.inputs = {{"lambda_U1", lam_u1}, {"lambda_U2", lam_u2}, {"lambda_U12", lam_u12},
              {"c_rho", c_rho}};
  r.value = 1.0 / ((inv(lam_u1) + inv(lam_u2)) * (c_rho * inv(lam_u12) + 1.0));
  r.formula = "1 / ((1/l(U1) + 1/l(U2)) (c_rho/l(U1 n U2) + 1))";
  return r;
}

std::pair<BoundReport, BoundReport> multi_hole_factors(int n, int p, double D, double RP,
                                                       double rh_min, double Rh_max, int holes,
                                                       int k_p)
{
  HODGE_REQUIRE(holes >= 1, ErrorCode::InvalidArgument, "need at least one hole");
  HODGE_REQUIRE(p >= 1 && p <= n - 1, ErrorCode::InvalidArgument, "need 1 <= p <= n - 1");
  HODGE_REQUIRE(k_p >= 0, ErrorCode::InvalidArgument, "k_p must be non-negative");
  require_positive({{"D", D}, {"RP", RP}, {"rh_min", rh_min}, {"Rh_max", Rh_max}});
  const double h = holes;
  BoundReport a, b;
  a.inputs = b.inputs = {{"n", n},          {"p", p},          {"D", D},
                         {"RP", RP},        {"rh_min", rh_min}, {"Rh_max", Rh_max},
                         {"holes", holes},  {"k_p", k_p}};
  a.degree = b.degree = p;
  a.index = fmt::format("1+k_{} = {}", p, 1 + k_p);
  b.index = "1";
  if (p == 1)
  {
    a.id = "multi_hole_cells_p1";
    a.value = p1_core(n, D, RP, Rh_max) / h;
    a.formula = "(1/h)(1/D^2)(RP/D)^(n-2) min{1, (RP/D)^(3n+2) (RP/Rh)^(7n-5)}";
    b.id = "multi_hole_ordered_p1";
    b.value = std::pow(RP * std::pow(rh_min, n - 1) / std::pow(D, n), holes - 1) *
              p1_core(n, D, RP, Rh_max);
    b.formula =
      "(1/D^2)(RP rh^(n-1)/D^n)^(h-1)(RP/D)^(n-2) min{1, (RP/D)^(3n+2) (RP/Rh)^(7n-5)}";
  }
  else
  {
    a.id = "multi_hole_cells";
    a.value = std::pow(RP / D, 2 * n * n + n - 6) / (D * D) / std::pow(h, 2 * p - 1) *
              std::min(1.0, std::pow(RP, -2.0 * (n - 3))) * min_hole(RP, Rh_max, n);
    a.formula =
      "(1/h^(2p-1))(1/D^2)(RP/D)^(2n^2+n-6) min{1, RP^(-2(n-3))} min{1, (RP/Rh)^(3(n-1)(n+1))}";
    b.id = "multi_hole_ordered";
    b.value = std::pow(RP / D, 2 * n * n - n - 4 + 2 * holes) / (D * D) * min_hole(RP, Rh_max, n);
    b.formula = "(1/D^2)(RP/D)^(2n^2-n-4+2h) min{1, (RP/Rh)^(3(n-1)(n+1))}";
  }
  return {a, b};
}

BoundReport identical_holes_factor(int n, int p, double D, double Rc_hat, double Rh, int holes)
{
  auto r = multi_hole_factors(n, p, D, Rc_hat, Rh, Rh, holes, 0).second;
  r.id = p == 1 ? "identical_holes_p1" : "identical_holes";
  return r;
}

std::pair<BoundReport, BoundReport> convex_and_fk_factors(double D)
{
  require_positive({{"D", D}});
  BoundReport a, b;
  a.id = "convex";
  b.id = "faber_krahn";
  a.inputs = b.inputs = {{"D", D}};
  a.value = b.value = 1.0 / (D * D);
  a.formula = "1/D^2 (smallest positive absolute eigenvalue, convex domain)";
  b.formula = "1/D^2 (first Dirichlet eigenvalue)";
  b.degree = 0;
  return {a, b};
}

std::vector<BoundReport> bound_table(const DomainSpec &spec, int p)
{
  const GeometricMeasures g = measure(spec);
  std::vector<BoundReport> rows;
  const int n = spec.n;
  if (spec.holes.size() == 1)
  {
    rows.push_back(annulus_factor(n, p, g.D, g.Rc, spec.holes[0].radius));
  }
  if (!spec.holes.empty())
  {
    const PowerPartition part = power_diagram(spec);
    const int k_p = p < static_cast<int>(part.intersection_counts.size())
                      ? part.intersection_counts[p]
                      : 0;
    auto [a, b] = multi_hole_factors(n, p, g.D, g.RP, g.Rh_min, g.Rh_max,
                                     static_cast<int>(spec.holes.size()), k_p);
    rows.push_back(a);
    rows.push_back(b);
  }
  auto [c, f] = convex_and_fk_factors(g.D);
  rows.push_back(c);
  rows.push_back(f);
  return rows;
}

std::string bound_table_text(const std::vector<BoundReport> &rows)
{
  std::string out = fmt::format("{:<24} {:>6} {:>10} {:>14} {:>9}  {}\n", "bound", "degree",
                                "index", "value", "constant", "formula");
  for (const auto &r : rows)
  {
    out += fmt::format("{:<24} {:>6} {:>10} {:>14.6e} {:>9}  {}\n", r.id, r.degree, r.index,
                       r.value, r.explicit_constant ? "explicit" : "K", r.formula);
  }
  return out;
}

std::string bound_table_csv(const std::vector<BoundReport> &rows)
{
  std::string out = csv_row({"id", "degree", "index", "value", "explicit_constant", "formula", "inputs"});
  for (const auto &r : rows)
  {
    std::string inputs;
    for (const auto &[k, v] : r.inputs)
    {
      inputs += fmt::format("{}{}={:.17g}", inputs.empty() ? "" : ";", k, v);
    }
    out += csv_row({r.id, std::to_string(r.degree), r.index, fmt::format("{:.17g}", r.value),
                    r.explicit_constant ? "true" : "false", r.formula, inputs});
  }
  return out;
}

}  // namespace hodge
