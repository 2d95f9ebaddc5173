// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "hodge/geometry.hpp"

namespace hodge
{

namespace
{

double hole_volume(int n, double r)
{
  return n == 2 ? std::numbers::pi * r * r : 4.0 / 3.0 * std::numbers::pi * r * r * r;
}

Halfspace wall(const Hole &hi, const Hole &hj)
{
  Point nrm = 2.0 * (hj.center - hi.center);
  double off = hj.center.squaredNorm() - hi.center.squaredNorm() - hj.radius * hj.radius +
               hi.radius * hi.radius;
  const double len = nrm.norm();
  return {nrm / len, off / len};
}

double power(const Hole &h, const Point &x)
{
  return (x - h.center).squaredNorm() - h.radius * h.radius;
}

// Convex hull area of planar points (Andrew's monotone chain).
double hull_area(std::vector<Point> pts)
{
  std::sort(pts.begin(), pts.end(), [](const Point &a, const Point &b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  auto cross = [](const Point &o, const Point &a, const Point &b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); i++)
  {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
    {
      k--;
    }
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;)
  {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
    {
      k--;
    }
    h[k++] = pts[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  double a = 0.0;
  for (std::size_t i = 0; i < h.size(); i++)
  {
    const Point &p = h[i], &q = h[(i + 1) % h.size()];
    a += p(0) * q(1) - p(1) * q(0);
  }
  return 0.5 * std::abs(a);
}

}  // namespace

bool in_power_cell(const PowerPartition &part, int i, const Point &x, double fatten)
{
  for (const auto &w : part.cells[i].walls)
  {
    if (w.normal.dot(x) > w.offset + fatten)
    {
      return false;
    }
  }
  return true;
}

PowerPartition power_diagram(const DomainSpec &spec, double margin_factor)
{
  validate(spec);
  HODGE_REQUIRE(!spec.holes.empty(), ErrorCode::InvalidArgument,
                "power diagram needs at least one hole");
  const int n = spec.n;
  const int h = static_cast<int>(spec.holes.size());
  PowerPartition part;
  part.domain = spec;
  const auto outer = outer_halfspaces(spec);
  const bool ball = spec.outer.kind == OuterBody::Kind::Ball;

  for (int i = 0; i < h; i++)
  {
    PowerCell cell;
    cell.hole = i;
    const Hole &hi = spec.holes[i];
    double contact = std::numeric_limits<double>::infinity();
    if (ball)
    {
      contact = spec.outer.radius - (hi.center - spec.outer.center).norm();
    }
    else
    {
      for (const auto &o : outer)
      {
        contact = std::min(contact, o.offset - o.normal.dot(hi.center));
      }
    }
    for (int j = 0; j < h; j++)
    {
      if (j == i)
      {
        continue;
      }
      Halfspace w = wall(hi, spec.holes[j]);
      cell.walls.push_back(w);
      cell.wall_hole.push_back(j);
      contact = std::min(contact, w.offset - w.normal.dot(hi.center));
    }
    cell.contact_radius = contact - hi.radius;
    std::vector<Halfspace> hs = cell.walls;
    hs.insert(hs.end(), outer.begin(), outer.end());
    cell.polytope = clip_halfspaces(n, hs);
    cell.empty = cell.polytope.empty();
    part.cells.push_back(std::move(cell));
  }

  // Cell volumes inside the true outer body, minus the hole.
  if (ball && n == 3)
  {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int samples = 400000;
    std::vector<int> hits(h, 0);
    int total = 0;
    while (total < samples)
    {
      Point x(u(rng), u(rng), u(rng));
      if (x.squaredNorm() > 1.0)
      {
        continue;
      }
      x = spec.outer.center + spec.outer.radius * x;
      int best = 0;
      for (int i = 1; i < h; i++)
      {
        if (power(spec.holes[i], x) < power(spec.holes[best], x))
        {
          best = i;
        }
      }
      hits[best]++;
      total++;
    }
    const double vball = hole_volume(3, spec.outer.radius);
    for (int i = 0; i < h; i++)
    {
      part.cells[i].volume =
        vball * hits[i] / static_cast<double>(total) - hole_volume(3, spec.holes[i].radius);
    }
  }
  else
  {
    for (int i = 0; i < h; i++)
    {
      auto &c = part.cells[i];
      double v = c.polytope.volume;
      if (ball && !c.empty)
      {
        v = disk_polygon_area(spec.outer.center, spec.outer.radius, c.polytope.vertices);
      }
      c.volume = c.empty ? 0.0 : v - hole_volume(n, spec.holes[i].radius);
    }
  }
  for (int i = 0; i < h; i++)
  {
    if (part.cells[i].empty)
    {
      part.empty_cells.push_back(i);
    }
  }

  // Adjacency: the wall between i and j carries a facet of positive measure.
  for (int i = 0; i < h; i++)
  {
    const auto &c = part.cells[i];
    if (c.empty)
    {
      continue;
    }
    for (const auto &f : c.polytope.facets)
    {
      int label = f.back();
      if (label >= 0 && label < static_cast<int>(c.walls.size()))
      {
        int j = c.wall_hole[label];
        if (i < j)
        {
          part.adjacency.emplace_back(i, j);
        }
      }
    }
  }
  std::sort(part.adjacency.begin(), part.adjacency.end());
  part.adjacency.erase(std::unique(part.adjacency.begin(), part.adjacency.end()),
                       part.adjacency.end());

  double rp = std::numeric_limits<double>::infinity();
  for (const auto &c : part.cells)
  {
    if (!c.empty)
    {
      rp = std::min(rp, c.contact_radius);
    }
  }
  part.margin = margin_factor * rp;

  // k_m for the cover by fattened cells: walls pushed outward by the margin.
  std::vector<int> live;
  for (int i = 0; i < h; i++)
  {
    if (!part.cells[i].empty)
    {
      live.push_back(i);
    }
  }
  part.intersection_counts.push_back(static_cast<int>(live.size()));
  const int max_order = std::min(n, static_cast<int>(live.size()) - 1);
  std::vector<std::vector<int>> level;
  for (int i : live)
  {
    level.push_back({i});
  }
  for (int m = 1; m <= max_order; m++)
  {
    std::vector<std::vector<int>> next;
    for (const auto &s : level)
    {
      for (int j : live)
      {
        if (j <= s.back())
        {
          continue;
        }
        std::vector<Halfspace> hs = outer;
        auto t = s;
        t.push_back(j);
        for (int i : t)
        {
          for (auto w : part.cells[i].walls)
          {
            w.offset += part.margin;
            hs.push_back(w);
          }
        }
        if (!clip_halfspaces(n, hs).empty())
        {
          next.push_back(t);
        }
      }
    }
    part.intersection_counts.push_back(static_cast<int>(next.size()));
    level = std::move(next);
  }
  return part;
}

bool prefix_convex(const PowerPartition &part, const std::vector<int> &cells,
                   const HypothesisOptions &opt)
{
  if (cells.size() <= 1)
  {
    return true;
  }
  const int n = part.domain.n;
  if (n == 2)
  {
    std::vector<Point> pts;
    double area = 0.0;
    for (int i : cells)
    {
      const auto &poly = part.cells[i].polytope;
      pts.insert(pts.end(), poly.vertices.begin(), poly.vertices.end());
      area += poly.volume;
    }
    const double tol = part.domain.outer.kind == OuterBody::Kind::Ball ? 1e-3 : 1e-6;
    return hull_area(pts) <= area * (1.0 + tol);
  }
  // 3D: sample segments between random points of the union and count escapes.
  std::mt19937_64 rng(opt.seed);
  Point lo = Point::Constant(std::numeric_limits<double>::infinity());
  Point hi = -lo;
  for (int i : cells)
  {
    for (const auto &v : part.cells[i].polytope.vertices)
    {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in_union = [&](const Point &x) {
    for (int i : cells)
    {
      if (point_in(part.cells[i].polytope.halfspaces, x, 1e-12))
      {
        return true;
      }
    }
    return false;
  };
  auto sample = [&]() {
    for (;;)
    {
      Point x(lo(0) + (hi(0) - lo(0)) * u(rng), lo(1) + (hi(1) - lo(1)) * u(rng),
              lo(2) + (hi(2) - lo(2)) * u(rng));
      if (in_union(x))
      {
        return x;
      }
    }
  };
  int escapes = 0;
  for (int s = 0; s < opt.samples_3d; s++)
  {
    Point a = sample(), b = sample();
    double t = u(rng);
    if (!in_union(a + t * (b - a)))
    {
      escapes++;
    }
  }
  return escapes <= opt.tolerance_3d * opt.samples_3d;
}

HypothesisResult hypothesis_order(const PowerPartition &part, const HypothesisOptions &opt)
{
  std::vector<int> live;
  for (int i = 0; i < static_cast<int>(part.cells.size()); i++)
  {
    if (!part.cells[i].empty)
    {
      live.push_back(i);
    }
  }
  const int h = static_cast<int>(live.size());
  HypothesisResult res;
  if (h <= 2)
  {
    res.ok = true;
    res.order = live;
    return res;
  }
  std::vector<int> memo(h <= 20 ? (1u << h) : 0, -1);
  auto convex = [&](unsigned mask, const std::vector<int> &cells) {
    if (!memo.empty() && memo[mask] >= 0)
    {
      return memo[mask] == 1;
    }
    bool ok = prefix_convex(part, cells, opt);
    if (!memo.empty())
    {
      memo[mask] = ok ? 1 : 0;
    }
    return ok;
  };
  std::vector<int> order, best;
  std::vector<char> used(h, 0);
  const bool exhaustive = h <= opt.exhaustive_limit;
  std::function<bool(unsigned)> dfs = [&](unsigned mask) -> bool {
    if (order.size() > best.size())
    {
      best = order;
    }
    if (static_cast<int>(order.size()) == h)
    {
      return true;
    }
    for (int k = 0; k < h; k++)
    {
      if (used[k])
      {
        continue;
      }
      order.push_back(live[k]);
      used[k] = 1;
      unsigned next = mask | (1u << k);
      if (convex(next, order))
      {
        if (dfs(next))
        {
          return true;
        }
        if (!exhaustive)
        {
          order.pop_back();
          used[k] = 0;
          return false;
        }
      }
      order.pop_back();
      used[k] = 0;
    }
    return false;
  };
  res.ok = dfs(0u);
  if (res.ok)
  {
    res.order = order;
  }
  else
  {
    res.order = best;
    res.failing_prefix_length = static_cast<int>(best.size()) + 1;
  }
  return res;
}

}  // namespace hodge
