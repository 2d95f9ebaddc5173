// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "hodge/meshgen.hpp"

namespace hodge
{

namespace
{

struct SurfaceMesh
{
  std::vector<Point> dirs;
  std::vector<std::array<int, 3>> tris;
};

SurfaceMesh icosphere(int level)
{
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SurfaceMesh s;
  s.dirs = {Point(-1, t, 0), Point(1, t, 0),  Point(-1, -t, 0), Point(1, -t, 0),
            Point(0, -1, t), Point(0, 1, t),  Point(0, -1, -t), Point(0, 1, -t),
            Point(t, 0, -1), Point(t, 0, 1),  Point(-t, 0, -1), Point(-t, 0, 1)};
  for (auto &d : s.dirs)
  {
    d.normalize();
  }
  s.tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
            {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
            {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; l++)
  {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end())
      {
        return it->second;
      }
      s.dirs.push_back((s.dirs[a] + s.dirs[b]).normalized());
      int id = static_cast<int>(s.dirs.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto &tri : s.tris)
    {
      int a = midpoint(tri[0], tri[1]), b = midpoint(tri[1], tri[2]), c = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], a, c});
      next.push_back({tri[1], b, a});
      next.push_back({tri[2], c, b});
      next.push_back({a, b, c});
    }
    s.tris = std::move(next);
  }
  return s;
}

double ray_exit(const Point &center, const Point &u, const OuterBody &outer)
{
  if (outer.kind == OuterBody::Kind::Ball)
  {
    const Point d = center - outer.center;
    const double b = d.dot(u);
    const double c = d.squaredNorm() - outer.radius * outer.radius;
    return -b + std::sqrt(b * b - c);
  }
  Point lo = outer.vertices.front(), hi = outer.vertices.front();
  for (const auto &v : outer.vertices)
  {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  double t = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; k++)
  {
    if (u(k) > 1e-14)
    {
      t = std::min(t, (hi(k) - center(k)) / u(k));
    }
    else if (u(k) < -1e-14)
    {
      t = std::min(t, (lo(k) - center(k)) / u(k));
    }
  }
  return t;
}

// Three tetrahedra filling the prism over a triangle; quad faces between surface vertices
// i < j use the diagonal bottom(i)-top(j), which neighbouring prisms agree on.
void prism_tets(std::array<int, 3> s, const std::function<int(int, int)> &id, int k, int k1,
                std::vector<Simplex> &out)
{
  std::sort(s.begin(), s.end());
  const int b0 = id(s[0], k), b1 = id(s[1], k), b2 = id(s[2], k);
  const int t0 = id(s[0], k1), t1 = id(s[1], k1), t2 = id(s[2], k1);
  const Simplex cand[3] = {make_simplex({b0, b1, b2, t2}), make_simplex({b0, b1, t1, t2}),
                           make_simplex({b0, t0, t1, t2})};
  for (const auto &c : cand)
  {
    Simplex q = sorted(c, 3);
    if (q[0] != q[1] && q[1] != q[2] && q[2] != q[3])
    {
      out.push_back(c);
    }
  }
}

}  // namespace

SimplicialMesh structured_rectangle(const Point &lo, const Point &hi, int nx, int ny)
{
  HODGE_REQUIRE(nx >= 1 && ny >= 1, ErrorCode::InvalidArgument, "need at least one square");
  std::vector<Point> verts;
  for (int j = 0; j <= ny; j++)
  {
    for (int i = 0; i <= nx; i++)
    {
      verts.emplace_back(lo(0) + (hi(0) - lo(0)) * i / nx, lo(1) + (hi(1) - lo(1)) * j / ny, 0.0);
    }
  }
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Simplex> cells;
  for (int j = 0; j < ny; j++)
  {
    for (int i = 0; i < nx; i++)
    {
      cells.push_back(make_simplex({id(i, j), id(i + 1, j), id(i + 1, j + 1)}));
      cells.push_back(make_simplex({id(i, j), id(i + 1, j + 1), id(i, j + 1)}));
    }
  }
  return SimplicialMesh::from_cells(2, std::move(verts), std::move(cells));
}

SimplicialMesh mesh3d_shell(const Point &center, double Rh, const OuterBody &outer, double h)
{
  HODGE_REQUIRE(Rh > 0.0 && h > 0.0, ErrorCode::InvalidArgument, "radii and h must be positive");
  if (outer.kind == OuterBody::Kind::Ball)
  {
    HODGE_REQUIRE((outer.center - center).norm() < 1e-12 * std::max(1.0, outer.radius),
                  ErrorCode::InvalidArgument, "ball-in-ball shell must be concentric");
  }
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  const SurfaceMesh probe = icosphere(3);
  for (const auto &u : probe.dirs)
  {
    const double r = ray_exit(center, u, outer);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  HODGE_REQUIRE(rmin > Rh, ErrorCode::InvalidDomain, "hole does not fit inside the outer body");
  HODGE_REQUIRE(h < rmin - Rh, ErrorCode::MeshTooCoarse,
                fmt::format("h = {} does not resolve the contact radius {}", h, rmin - Rh));
  int level = std::max(1, static_cast<int>(std::ceil(std::log2(1.0515 * rmax / h))));
  const SurfaceMesh sphere = icosphere(level);
  const int ns = static_cast<int>(sphere.dirs.size());
  const int layers = std::max(2, static_cast<int>(std::ceil((rmax - Rh) / h)));
  std::vector<Point> verts;
  for (int k = 0; k <= layers; k++)
  {
    for (const auto &u : sphere.dirs)
    {
      const double R = ray_exit(center, u, outer);
      verts.push_back(center + u * (Rh + (R - Rh) * k / layers));
    }
  }
  auto id = [&](int s, int k) { return k * ns + s; };
  std::vector<Simplex> cells;
  for (int k = 0; k < layers; k++)
  {
    for (const auto &tri : sphere.tris)
    {
      prism_tets(tri, id, k, k + 1, cells);
    }
  }
  std::unordered_map<Simplex, int, SimplexHash> tags;
  for (const auto &tri : sphere.tris)
  {
    tags[sorted(make_simplex({id(tri[0], 0), id(tri[1], 0), id(tri[2], 0)}), 2)] = 1;
    tags[sorted(make_simplex({id(tri[0], layers), id(tri[1], layers), id(tri[2], layers)}), 2)] =
      kOuter;
  }
  return SimplicialMesh::from_cells(3, std::move(verts), std::move(cells), tags, kOuter);
}

SimplicialMesh revolve(const SimplicialMesh &profile, int sectors)
{
  HODGE_REQUIRE(profile.dim() == 2, ErrorCode::InvalidArgument, "profile must be planar");
  HODGE_REQUIRE(sectors >= 3, ErrorCode::InvalidArgument, "need at least three sectors");
  const int nv = profile.count(0);
  std::vector<Point> verts;
  std::vector<int> first(nv);
  std::vector<char> on_axis(nv);
  for (int v = 0; v < nv; v++)
  {
    const Point &p = profile.vertex(v);
    HODGE_REQUIRE(p(1) >= -1e-12, ErrorCode::InvalidArgument, "profile must lie in r >= 0");
    on_axis[v] = std::abs(p(1)) <= 1e-12;
    first[v] = static_cast<int>(verts.size());
    const int copies = on_axis[v] ? 1 : sectors;
    for (int k = 0; k < copies; k++)
    {
      const double phi = 2.0 * std::numbers::pi * k / sectors;
      verts.emplace_back(p(0), p(1) * std::cos(phi), p(1) * std::sin(phi));
    }
  }
  auto id = [&](int v, int k) { return on_axis[v] ? first[v] : first[v] + (k % sectors); };
  std::vector<Simplex> cells;
  for (int k = 0; k < sectors; k++)
  {
    for (const auto &c : profile.cells())
    {
      prism_tets({c[0], c[1], c[2]}, id, k, k + 1, cells);
    }
  }
  std::unordered_map<Simplex, int, SimplexHash> tags;
  for (int e = 0; e < profile.count(1); e++)
  {
    const int tag = profile.boundary_tags()[e];
    if (tag == kInterior)
    {
      continue;
    }
    const int i = profile.simplices(1)[e][0], j = profile.simplices(1)[e][1];
    for (int k = 0; k < sectors; k++)
    {
      const Simplex faces[2] = {make_simplex({id(i, k), id(j, k), id(j, k + 1)}),
                                make_simplex({id(i, k), id(j, k + 1), id(i, k + 1)})};
      for (const auto &f : faces)
      {
        Simplex q = sorted(f, 2);
        if (q[0] != q[1] && q[1] != q[2])
        {
          tags[q] = tag;
        }
      }
    }
  }
  return SimplicialMesh::from_cells(3, std::move(verts), std::move(cells), tags, kOuter);
}

SimplicialMesh mesh_domain(const DomainSpec &spec, double h)
{
  validate(spec);
  if (spec.n == 2)
  {
    return mesh2d(boundary_of(spec), h);
  }
  HODGE_REQUIRE(spec.holes.size() == 1, ErrorCode::InvalidArgument,
                "3D meshing supports a single spherical hole");
  return mesh3d_shell(spec.holes[0].center, spec.holes[0].radius, spec.outer, h);
}

}  // namespace hodge
