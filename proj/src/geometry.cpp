// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace hodge
{

DomainSpec DomainSpec::ball(int n, const Point &center, double radius)
{
  DomainSpec s;
  s.n = n;
  s.outer.kind = OuterBody::Kind::Ball;
  s.outer.center = center;
  s.outer.radius = radius;
  return s;
}

DomainSpec DomainSpec::box(int n, const Point &lo, const Point &hi)
{
  DomainSpec s;
  s.n = n;
  s.outer.kind = OuterBody::Kind::Polytope;
  if (n == 2)
  {
    s.outer.vertices = {Point(lo(0), lo(1), 0), Point(hi(0), lo(1), 0), Point(hi(0), hi(1), 0),
                        Point(lo(0), hi(1), 0)};
  }
  else
  {
    for (int k = 0; k < 8; k++)
    {
      s.outer.vertices.emplace_back((k & 1) ? hi(0) : lo(0), (k & 2) ? hi(1) : lo(1),
                                    (k & 4) ? hi(2) : lo(2));
    }
  }
  return s;
}

DomainSpec &DomainSpec::add_hole(const Point &center, double radius)
{
  holes.push_back({center, radius});
  return *this;
}

bool point_in(const std::vector<Halfspace> &hs, const Point &x, double tol)
{
  for (const auto &h : hs)
  {
    if (h.normal.dot(x) > h.offset + tol)
    {
      return false;
    }
  }
  return true;
}

namespace
{

double cross2(const Point &a, const Point &b) { return a(0) * b(1) - a(1) * b(0); }

double polygon_area(const std::vector<Point> &p)
{
  double a = 0.0;
  for (std::size_t k = 0; k < p.size(); k++)
  {
    a += cross2(p[k], p[(k + 1) % p.size()]);
  }
  return 0.5 * a;
}

double scale_of(const std::vector<Halfspace> &hs)
{
  double s = 1.0;
  for (const auto &h : hs)
  {
    s = std::max(s, std::abs(h.offset));
  }
  return s;
}

ConvexPolytope clip2d(const std::vector<Halfspace> &hs)
{
  const double big = 1e6 * scale_of(hs);
  struct V
  {
    Point x;
    int label;
  };
  // Labels name the line of each vertex's outgoing edge; -1..-4 are the box sides.
  const Halfspace box[4] = {{Point(0, -1, 0), big}, {Point(1, 0, 0), big}, {Point(0, 1, 0), big},
                            {Point(-1, 0, 0), big}};
  auto line = [&](int label) -> const Halfspace & { return label < 0 ? box[-1 - label] : hs[label]; };
  std::vector<V> poly = {{Point(-big, -big, 0), -1},
                         {Point(big, -big, 0), -2},
                         {Point(big, big, 0), -3},
                         {Point(-big, big, 0), -4}};
  const double tol = 1e-12 * scale_of(hs);
  for (int k = 0; k < static_cast<int>(hs.size()) && !poly.empty(); k++)
  {
    const auto &h = hs[k];
    std::vector<V> out;
    for (std::size_t a = 0; a < poly.size(); a++)
    {
      const V &p = poly[a];
      const V &q = poly[(a + 1) % poly.size()];
      const double fp = h.normal.dot(p.x) - h.offset;
      const double fq = h.normal.dot(q.x) - h.offset;
      const bool ip = fp <= tol, iq = fq <= tol;
      if (ip)
      {
        out.push_back(p);
      }
      if (ip != iq)
      {
        const Halfspace &e = line(p.label);
        const double det = e.normal(0) * h.normal(1) - e.normal(1) * h.normal(0);
        Point x((e.offset * h.normal(1) - h.offset * e.normal(1)) / det,
                (e.normal(0) * h.offset - h.normal(0) * e.offset) / det, 0.0);
        out.push_back({x, ip ? k : p.label});
      }
    }
    // Collapse coincident neighbours created by clipping through a vertex.
    std::vector<V> merged;
    for (std::size_t a = 0; a < out.size(); a++)
    {
      const V &nx = out[(a + 1) % out.size()];
      if (out.size() > 1 && (out[a].x - nx.x).norm() <= tol)
      {
        continue;
      }
      merged.push_back(out[a]);
    }
    poly = std::move(merged);
    if (poly.size() < 3)
    {
      poly.clear();
    }
  }
  ConvexPolytope cp;
  cp.dim = 2;
  cp.halfspaces = hs;
  for (std::size_t a = 0; a < poly.size(); a++)
  {
    cp.vertices.push_back(poly[a].x);
    cp.facets.push_back({static_cast<int>(a), static_cast<int>((a + 1) % poly.size()),
                         std::max(poly[a].label, -1)});
  }
  cp.volume = cp.vertices.empty() ? 0.0 : polygon_area(cp.vertices);
  if (cp.volume <= 0.0)
  {
    cp.vertices.clear();
    cp.facets.clear();
    cp.volume = 0.0;
  }
  return cp;
}

ConvexPolytope clip3d(const std::vector<Halfspace> &hs)
{
  const int m = static_cast<int>(hs.size());
  const double tol = 1e-10 * scale_of(hs);
  std::vector<Point> verts;
  for (int a = 0; a < m; a++)
  {
    for (int b = a + 1; b < m; b++)
    {
      const Point nab = hs[a].normal.cross(hs[b].normal);
      if (nab.norm() < 1e-12)
      {
        continue;
      }
      for (int c = b + 1; c < m; c++)
      {
        Eigen::Matrix3d A;
        A.row(0) = hs[a].normal.transpose();
        A.row(1) = hs[b].normal.transpose();
        A.row(2) = hs[c].normal.transpose();
        const double det = A.determinant();
        if (std::abs(det) < 1e-12)
        {
          continue;
        }
        Point x = A.partialPivLu().solve(Eigen::Vector3d(hs[a].offset, hs[b].offset, hs[c].offset));
        if (!point_in(hs, x, tol))
        {
          continue;
        }
        bool dup = false;
        for (const auto &v : verts)
        {
          if ((v - x).norm() <= 10 * tol)
          {
            dup = true;
            break;
          }
        }
        if (!dup)
        {
          verts.push_back(x);
        }
      }
    }
  }
  ConvexPolytope cp;
  cp.dim = 3;
  cp.halfspaces = hs;
  if (verts.size() < 4)
  {
    return cp;
  }
  Point o = Point::Zero();
  for (const auto &v : verts)
  {
    o += v;
  }
  o /= static_cast<double>(verts.size());
  cp.vertices = verts;
  double vol = 0.0;
  for (int k = 0; k < m; k++)
  {
    std::vector<int> on;
    for (int i = 0; i < static_cast<int>(verts.size()); i++)
    {
      if (std::abs(hs[k].normal.dot(verts[i]) - hs[k].offset) <= 10 * tol)
      {
        on.push_back(i);
      }
    }
    if (on.size() < 3)
    {
      continue;
    }
    Point fc = Point::Zero();
    for (int i : on)
    {
      fc += verts[i];
    }
    fc /= static_cast<double>(on.size());
    const Point nrm = hs[k].normal.normalized();
    Point e1 = (verts[on[0]] - fc).normalized();
    Point e2 = nrm.cross(e1);
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      Point da = verts[a] - fc, db = verts[b] - fc;
      return std::atan2(da.dot(e2), da.dot(e1)) < std::atan2(db.dot(e2), db.dot(e1));
    });
    double farea = 0.0;
    for (std::size_t a = 0; a < on.size(); a++)
    {
      const Point &p = verts[on[a]], &q = verts[on[(a + 1) % on.size()]];
      farea += 0.5 * (p - fc).cross(q - fc).dot(nrm);
      vol += std::abs((p - o).cross(q - o).dot(fc - o)) / 6.0;
    }
    if (farea <= 1e-14 * scale_of(hs) * scale_of(hs))
    {
      continue;
    }
    on.push_back(k);
    cp.facets.push_back(on);
  }
  cp.volume = vol;
  if (vol <= 0.0)
  {
    cp.vertices.clear();
    cp.facets.clear();
  }
  return cp;
}

// Unit-normal halfspaces supporting the convex hull of the given points.
std::vector<Halfspace> hull_halfspaces(int n, const std::vector<Point> &pts)
{
  std::vector<Halfspace> hs;
  double scale = 0.0;
  for (const auto &p : pts)
  {
    scale = std::max(scale, p.norm());
  }
  const double tol = 1e-10 * std::max(scale, 1.0);
  const int m = static_cast<int>(pts.size());
  auto add = [&](Point nrm, double off) {
    for (const auto &h : hs)
    {
      if ((h.normal - nrm).norm() < 1e-9 && std::abs(h.offset - off) < tol)
      {
        return;
      }
    }
    hs.push_back({nrm, off});
  };
  for (int a = 0; a < m; a++)
  {
    for (int b = a + 1; b < m; b++)
    {
      if (n == 2)
      {
        Point d = pts[b] - pts[a];
        if (d.norm() <= tol)
        {
          continue;
        }
        Point nrm = Point(d(1), -d(0), 0).normalized();
        double off = nrm.dot(pts[a]);
        int above = 0, below = 0;
        for (const auto &p : pts)
        {
          double f = nrm.dot(p) - off;
          above += f > tol;
          below += f < -tol;
        }
        if (above == 0)
        {
          add(nrm, off);
        }
        else if (below == 0)
        {
          add(-nrm, -off);
        }
        continue;
      }
      for (int c = b + 1; c < m; c++)
      {
        Point nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
        if (nrm.norm() <= tol * tol)
        {
          continue;
        }
        nrm.normalize();
        double off = nrm.dot(pts[a]);
        int above = 0, below = 0;
        for (const auto &p : pts)
        {
          double f = nrm.dot(p) - off;
          above += f > tol;
          below += f < -tol;
        }
        if (above == 0)
        {
          add(nrm, off);
        }
        else if (below == 0)
        {
          add(-nrm, -off);
        }
      }
    }
  }
  return hs;
}

double ball_volume(int n, double r)
{
  return n == 2 ? std::numbers::pi * r * r : 4.0 / 3.0 * std::numbers::pi * r * r * r;
}

double boundary_distance(const DomainSpec &spec, const Point &x)
{
  if (spec.outer.kind == OuterBody::Kind::Ball)
  {
    return spec.outer.radius - (x - spec.outer.center).norm();
  }
  double d = std::numeric_limits<double>::infinity();
  for (const auto &h : hull_halfspaces(spec.n, spec.outer.vertices))
  {
    d = std::min(d, h.offset - h.normal.dot(x));
  }
  return d;
}

}  // namespace

ConvexPolytope clip_halfspaces(int dim, const std::vector<Halfspace> &hs)
{
  HODGE_REQUIRE(dim == 2 || dim == 3, ErrorCode::InvalidArgument, "dimension must be 2 or 3");
  return dim == 2 ? clip2d(hs) : clip3d(hs);
}

void export_off(const ConvexPolytope &poly, const std::string &path)
{
  std::ofstream os(path);
  HODGE_REQUIRE(os, ErrorCode::Io, "cannot open " + path);
  os << "OFF\n" << poly.vertices.size() << ' ' << (poly.dim == 2 ? 1 : poly.facets.size())
     << " 0\n";
  for (const auto &v : poly.vertices)
  {
    os << fmt::format("{:.17g} {:.17g} {:.17g}\n", v(0), v(1), v(2));
  }
  if (poly.dim == 2)
  {
    os << poly.vertices.size();
    for (std::size_t i = 0; i < poly.vertices.size(); i++)
    {
      os << ' ' << i;
    }
    os << '\n';
    return;
  }
  for (const auto &f : poly.facets)
  {
    // The last entry of each facet is its halfspace index.
    os << f.size() - 1;
    for (std::size_t i = 0; i + 1 < f.size(); i++)
    {
      os << ' ' << f[i];
    }
    os << '\n';
  }
}

std::vector<Halfspace> outer_halfspaces(const DomainSpec &spec, int ball_facets)
{
  if (spec.outer.kind == OuterBody::Kind::Polytope)
  {
    return hull_halfspaces(spec.n, spec.outer.vertices);
  }
  std::vector<Halfspace> hs;
  const Point &c = spec.outer.center;
  const double R = spec.outer.radius;
  if (spec.n == 2)
  {
    for (int k = 0; k < ball_facets; k++)
    {
      double t = 2.0 * std::numbers::pi * k / ball_facets;
      Point nrm(std::cos(t), std::sin(t), 0.0);
      hs.push_back({nrm, nrm.dot(c) + R});
    }
    return hs;
  }
  // Golden-spiral directions give an evenly spread circumscribed polyhedron.
  const int m = std::max(ball_facets / 2, 32);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < m; k++)
  {
    double z = 1.0 - 2.0 * (k + 0.5) / m;
    double r = std::sqrt(1.0 - z * z);
    Point nrm(r * std::cos(golden * k), r * std::sin(golden * k), z);
    hs.push_back({nrm, nrm.dot(c) + R});
  }
  return hs;
}

void validate(const DomainSpec &spec)
{
  HODGE_REQUIRE(spec.n == 2 || spec.n == 3, ErrorCode::InvalidDomain, "dimension must be 2 or 3");
  if (spec.outer.kind == OuterBody::Kind::Ball)
  {
    HODGE_REQUIRE(spec.outer.radius > 0.0, ErrorCode::InvalidDomain, "outer radius must be > 0");
  }
  else
  {
    const auto &v = spec.outer.vertices;
    HODGE_REQUIRE(static_cast<int>(v.size()) >= spec.n + 1, ErrorCode::InvalidDomain,
                  "outer polytope needs at least n+1 vertices");
    auto hs = hull_halfspaces(spec.n, v);
    for (const auto &p : v)
    {
      int on = 0;
      for (const auto &h : hs)
      {
        on += std::abs(h.normal.dot(p) - h.offset) < 1e-9 * std::max(1.0, p.norm());
      }
      HODGE_REQUIRE(on >= spec.n, ErrorCode::InvalidDomain,
                    "outer polytope vertices are not in convex position");
    }
  }
  for (std::size_t i = 0; i < spec.holes.size(); i++)
  {
    const auto &h = spec.holes[i];
    HODGE_REQUIRE(h.radius > 0.0, ErrorCode::InvalidDomain, "hole radius must be > 0");
    HODGE_REQUIRE(boundary_distance(spec, h.center) > h.radius, ErrorCode::InvalidDomain,
                  fmt::format("hole {} touches or leaves the outer body", i));
    for (std::size_t j = 0; j < i; j++)
    {
      const auto &g = spec.holes[j];
      HODGE_REQUIRE((h.center - g.center).norm() > h.radius + g.radius, ErrorCode::InvalidDomain,
                    fmt::format("holes {} and {} touch or overlap", j, i));
    }
  }
}

bool inside(const DomainSpec &spec, const Point &x)
{
  if (boundary_distance(spec, x) < 0.0)
  {
    return false;
  }
  for (const auto &h : spec.holes)
  {
    if ((x - h.center).norm() <= h.radius)
    {
      return false;
    }
  }
  return true;
}

double domain_volume(const DomainSpec &spec)
{
  double v = spec.outer.kind == OuterBody::Kind::Ball
               ? ball_volume(spec.n, spec.outer.radius)
               : clip_halfspaces(spec.n, outer_halfspaces(spec)).volume;
  for (const auto &h : spec.holes)
  {
    v -= ball_volume(spec.n, h.radius);
  }
  return v;
}

GeometricMeasures measure(const DomainSpec &spec)
{
  validate(spec);
  GeometricMeasures g;
  if (spec.outer.kind == OuterBody::Kind::Ball)
  {
    g.D = 2.0 * spec.outer.radius;
  }
  else
  {
    for (const auto &a : spec.outer.vertices)
    {
      for (const auto &b : spec.outer.vertices)
      {
        g.D = std::max(g.D, (a - b).norm());
      }
    }
  }
  if (spec.holes.empty())
  {
    return g;
  }
  g.r_c = std::numeric_limits<double>::infinity();
  g.d_h = std::numeric_limits<double>::infinity();
  g.Rh_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.holes.size(); i++)
  {
    const auto &h = spec.holes[i];
    g.r_c = std::min(g.r_c, boundary_distance(spec, h.center) - h.radius);
    g.Rh_min = std::min(g.Rh_min, h.radius);
    g.Rh_max = std::max(g.Rh_max, h.radius);
    for (std::size_t j = 0; j < i; j++)
    {
      const auto &o = spec.holes[j];
      g.d_h = std::min(g.d_h, (h.center - o.center).norm() - h.radius - o.radius);
    }
  }
  g.Rc = g.r_c;
  g.Rc_hat = std::min(g.r_c, g.d_h / 2.0);
  const auto part = power_diagram(spec);
  g.RP = std::numeric_limits<double>::infinity();
  for (const auto &c : part.cells)
  {
    if (!c.empty)
    {
      g.RP = std::min(g.RP, c.contact_radius);
    }
  }
  return g;
}

DomainSpec transform(const DomainSpec &spec, double s, const Point &t)
{
  HODGE_REQUIRE(s > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
  DomainSpec out = spec;
  out.outer.center = s * spec.outer.center + t;
  out.outer.radius = s * spec.outer.radius;
  for (auto &v : out.outer.vertices)
  {
    v = s * v + t;
  }
  for (auto &h : out.holes)
  {
    h.center = s * h.center + t;
    h.radius *= s;
  }
  return out;
}

double disk_polygon_area(const Point &center, double radius, const std::vector<Point> &polygon)
{
  const double r2 = radius * radius;
  // Signed area of disk ∩ triangle(0, a, b) for a disk centred at the origin.
  auto sector = [&](const Point &a, const Point &b) {
    return 0.5 * r2 * std::atan2(cross2(a, b), a(0) * b(0) + a(1) * b(1));
  };
  auto piece = [&](const Point &a, const Point &b) {
    const Point d = b - a;
    const double A = d.squaredNorm();
    if (A == 0.0)
    {
      return 0.0;
    }
    const double B = a.dot(d);
    const double C = a.squaredNorm() - r2;
    const double disc = B * B - A * C;
    if (disc <= 0.0)
    {
      return sector(a, b);
    }
    const double sq = std::sqrt(disc);
    const double t0 = std::clamp((-B - sq) / A, 0.0, 1.0);
    const double t1 = std::clamp((-B + sq) / A, 0.0, 1.0);
    const Point p0 = a + t0 * d, p1 = a + t1 * d;
    return sector(a, p0) + 0.5 * cross2(p0, p1) + sector(p1, b);
  };
  double area = 0.0;
  for (std::size_t k = 0; k < polygon.size(); k++)
  {
    Point a = polygon[k] - center, b = polygon[(k + 1) % polygon.size()] - center;
    a(2) = b(2) = 0.0;
    area += piece(a, b);
  }
  return std::abs(area);
}

}  // namespace hodge
