// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_CURVE_HPP
#define HODGE_CURVE_HPP

#include <string>
#include <vector>

#include "hodge/mesh.hpp"

namespace hodge
{

// Line segment or circular arc in the plane, parameterized by arc length.
struct CurvePiece
{
  enum class Kind
  {
    Line,
    Arc
  };
  Kind kind = Kind::Line;
  Point a = Point::Zero(), b = Point::Zero();
  Point center = Point::Zero();
  double radius = 0.0, theta0 = 0.0, sweep = 0.0;

  static CurvePiece line(const Point &a, const Point &b);
  // Arc from angle theta0 to theta1 (counterclockwise when theta1 > theta0).
  static CurvePiece arc(const Point &center, double radius, double theta0, double theta1);

  double length() const;
  Point eval(double s) const;
  Point start() const { return eval(0.0); }
  Point end() const { return eval(length()); }
};

// Closed loop of pieces; consecutive pieces must join.
struct BoundaryLoop
{
  std::vector<CurvePiece> pieces;
  int tag = kOuter;

  double length() const;
  Point eval(double s) const;
  // Arc-length positions where pieces start.
  std::vector<double> breakpoints() const;
};

struct BoundaryDescription
{
  std::vector<BoundaryLoop> loops;

  // Even-odd containment against a fine polyline sampling of every loop.
  bool contains(const Point &x, double spacing = 1e-3) const;
};

BoundaryLoop circle_loop(const Point &center, double radius, int tag);
BoundaryLoop polygon_loop(const std::vector<Point> &vertices, int tag);
void check_closed(const BoundaryLoop &loop, double tol = 1e-9);

// Polyline samples of every loop as CSV rows `loop,tag,s,x,y`.
std::string boundary_csv(const BoundaryDescription &b, double spacing);

}  // namespace hodge

#endif  // HODGE_CURVE_HPP
