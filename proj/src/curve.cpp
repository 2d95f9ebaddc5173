// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace hodge
{

CurvePiece CurvePiece::line(const Point &a, const Point &b)
{
  CurvePiece c;
  c.kind = Kind::Line;
  c.a = a;
  c.b = b;
  return c;
}

CurvePiece CurvePiece::arc(const Point &center, double radius, double theta0, double theta1)
{
  CurvePiece c;
  c.kind = Kind::Arc;
  c.center = center;
  c.radius = radius;
  c.theta0 = theta0;
  c.sweep = theta1 - theta0;
  return c;
}

double CurvePiece::length() const
{
  return kind == Kind::Line ? (b - a).norm() : radius * std::abs(sweep);
}

Point CurvePiece::eval(double s) const
{
  const double L = length();
  const double t = L > 0.0 ? std::clamp(s / L, 0.0, 1.0) : 0.0;
  if (kind == Kind::Line)
  {
    if (t == 1.0)
    {
      return b;
    }
    return a + t * (b - a);
  }
  const double th = theta0 + t * sweep;
  return center + radius * Point(std::cos(th), std::sin(th), 0.0);
}

double BoundaryLoop::length() const
{
  double L = 0.0;
  for (const auto &p : pieces)
  {
    L += p.length();
  }
  return L;
}

Point BoundaryLoop::eval(double s) const
{
  const double L = length();
  s = std::fmod(s, L);
  if (s < 0.0)
  {
    s += L;
  }
  for (const auto &p : pieces)
  {
    const double l = p.length();
    if (s <= l)
    {
      return p.eval(s);
    }
    s -= l;
  }
  return pieces.back().end();
}

std::vector<double> BoundaryLoop::breakpoints() const
{
  std::vector<double> b;
  double s = 0.0;
  for (const auto &p : pieces)
  {
    b.push_back(s);
    s += p.length();
  }
  return b;
}

void check_closed(const BoundaryLoop &loop, double tol)
{
  HODGE_REQUIRE(!loop.pieces.empty(), ErrorCode::InvalidArgument, "empty boundary loop");
  for (std::size_t k = 0; k < loop.pieces.size(); k++)
  {
    const auto &p = loop.pieces[k];
    const auto &q = loop.pieces[(k + 1) % loop.pieces.size()];
    HODGE_REQUIRE((p.end() - q.start()).norm() <= tol * std::max(1.0, p.end().norm()),
                  ErrorCode::InvalidArgument,
                  fmt::format("boundary loop is not closed at piece {}", k));
  }
}

bool BoundaryDescription::contains(const Point &x, double spacing) const
{
  bool in = false;
  for (const auto &loop : loops)
  {
    const double L = loop.length();
    const int m = std::max(64, static_cast<int>(std::ceil(L / spacing)));
    Point p = loop.eval(0.0);
    for (int k = 1; k <= m; k++)
    {
      Point q = loop.eval(L * k / m);
      if ((p(1) > x(1)) != (q(1) > x(1)))
      {
        const double xi = p(0) + (x(1) - p(1)) * (q(0) - p(0)) / (q(1) - p(1));
        if (x(0) < xi)
        {
          in = !in;
        }
      }
      p = q;
    }
  }
  return in;
}

BoundaryLoop circle_loop(const Point &center, double radius, int tag)
{
  BoundaryLoop l;
  l.tag = tag;
  l.pieces.push_back(CurvePiece::arc(center, radius, 0.0, 2.0 * std::numbers::pi));
  return l;
}

BoundaryLoop polygon_loop(const std::vector<Point> &vertices, int tag)
{
  BoundaryLoop l;
  l.tag = tag;
  for (std::size_t k = 0; k < vertices.size(); k++)
  {
    l.pieces.push_back(CurvePiece::line(vertices[k], vertices[(k + 1) % vertices.size()]));
  }
  return l;
}

std::string boundary_csv(const BoundaryDescription &b, double spacing)
{
  std::string out = "loop,tag,s,x,y\n";
  for (std::size_t i = 0; i < b.loops.size(); i++)
  {
    const auto &loop = b.loops[i];
    const double L = loop.length();
    const int m = std::max(16, static_cast<int>(std::ceil(L / spacing)));
    for (int k = 0; k <= m; k++)
    {
      const double s = L * k / m;
      const Point p = loop.eval(s);
      out += fmt::format("{},{},{:.12g},{:.15g},{:.15g}\n", i, loop.tag, s, p(0), p(1));
    }
  }
  return out;
}

}  // namespace hodge
