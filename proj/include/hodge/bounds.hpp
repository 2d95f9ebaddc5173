// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_BOUNDS_HPP
#define HODGE_BOUNDS_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hodge/geometry.hpp"

namespace hodge
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A lower bound or a geometric factor (value without the unknown constant K). `degree` and
// `index` name the bounded eigenvalue: the index-th exact eigenvalue on degree-forms.
struct BoundReport
{
  std::string id;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool explicit_constant = false;
  std::string formula;
  int degree = 1;
  std::string index = "1";

  double input(const std::string &name) const;
};

// Single hole: branch p >= 2 (n >= 3) or p = 1.
BoundReport annulus_factor(int n, int p, double D, double Rc, double Rh);

// Neumann bound from a two-set cover; mu = kInfinity is allowed.
BoundReport union_neumann_bound(double vol_intersection, double vol_total, double mu1_u1,
                                double mu1_u2);

// Per-cover eigenvalue data for the gluing bounds. Empty intersections carry kInfinity.
struct McGowanInput
{
  int p = 1;
  double c_rho = 0.0;
  // lambda''_p(U_i), the first exact p-eigenvalue of each cover element.
  std::vector<double> piece;
  // lambda''_{p-1}(U_i n U_j), k0 x k0 row-major; the diagonal holds lambda''_{p-1}(U_i).
  std::vector<double> pair;
  // lambda''_{p-2}(U_i n U_j n U_k), k0^3 row-major (p = 3 only).
  std::vector<double> triple;
};

// Gluing bound on lambda''_{p, 1 + k_p}: p = 1, 2, 3, all sums over 1..k0.
BoundReport mcgowan_bounds(const McGowanInput &in);
// The p = 3 denominator on its own.
double mcgowan_aleph(const McGowanInput &in);

// Two-set gluing factor (K omitted).
BoundReport modified_mcgowan_factor(double lam_u1, double lam_u2, double lam_u12, double c_rho);

// Multi-hole factors: first = (1 + k_p)-th eigenvalue bound from the cell cover, second =
// first eigenvalue under the convex-prefix ordering hypothesis.
std::pair<BoundReport, BoundReport> multi_hole_factors(int n, int p, double D, double RP,
                                                       double rh_min, double Rh_max, int holes,
                                                       int k_p);
// Identical holes of radius Rh, contact radius Rc_hat.
BoundReport identical_holes_factor(int n, int p, double D, double Rc_hat, double Rh, int holes);

// 1/D^2 for convex domains and for the Dirichlet (Faber-Krahn) bound.
std::pair<BoundReport, BoundReport> convex_and_fk_factors(double D);

// All factors applicable to a domain for exact p-eigenvalues.
std::vector<BoundReport> bound_table(const DomainSpec &spec, int p);
std::string bound_table_text(const std::vector<BoundReport> &rows);
std::string bound_table_csv(const std::vector<BoundReport> &rows);

}  // namespace hodge

#endif  // HODGE_BOUNDS_HPP
