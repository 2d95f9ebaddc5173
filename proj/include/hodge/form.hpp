// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_FORM_HPP
#define HODGE_FORM_HPP

#include <functional>
#include <vector>

#include "hodge/mesh.hpp"

namespace hodge
{

// Increasing index tuples of {0..n-1} of size p, lexicographic order.
std::vector<std::vector<int>> form_basis(int n, int p);

// A differential p-form on R^n given by its components on dx_I, I increasing.
struct AnalyticForm
{
  int degree = 0;
  int dim = 2;
  // Writes C(dim, degree) components at x.
  std::function<void(const Point &, double *)> components;
  // Points where the form cannot be evaluated; empty means nowhere.
  std::function<bool(const Point &)> singular;

  // omega_x(t_1, ..., t_p).
  double apply(const Point &x, const std::vector<Point> &tangents) const;
};

}  // namespace hodge

#endif  // HODGE_FORM_HPP
