// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hodge/geometry.hpp"

using namespace hodge;

namespace
{

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

DomainSpec concentric()
{
  return DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 0.5);
}

DomainSpec two_holes()
{
  return DomainSpec::box(2, P(0, 0), P(10, 10)).add_hole(P(3, 5), 1.0).add_hole(P(7, 5), 1.0);
}

}  // namespace

TEST(Measure, ConcentricDisk)
{
  const auto g = measure(concentric());
  EXPECT_NEAR(g.Rc, 1.5, 1e-12);
  EXPECT_NEAR(g.D, 4.0, 1e-12);
  EXPECT_TRUE(std::isinf(g.d_h));
}

TEST(Measure, TwoHolesInSquare)
{
  const auto g = measure(two_holes());
  EXPECT_NEAR(g.r_c, 2.0, 1e-12);
  EXPECT_NEAR(g.d_h, 2.0, 1e-12);
  EXPECT_NEAR(g.Rc_hat, 1.0, 1e-12);
  EXPECT_NEAR(g.D, 10.0 * std::sqrt(2.0), 1e-12);
}

TEST(Measure, IdenticalHolesPartitionParameter)
{
  const auto g = measure(two_holes());
  EXPECT_NEAR(g.RP, g.Rc_hat, 1e-9);
}

TEST(Transform, Identity)
{
  const auto a = measure(two_holes());
  const auto b = measure(transform(two_holes(), 1.0));
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(a.Rc_hat, b.Rc_hat);
  EXPECT_EQ(a.RP, b.RP);
}

TEST(Transform, Homogeneity)
{
  EXPECT_NEAR(measure(transform(concentric(), 2.0)).Rc, 3.0, 1e-12);
  const auto g = measure(concentric());
  const auto n = measure(transform(concentric(), 1.0 / g.Rc, P(0.3, -1.2)));
  EXPECT_NEAR(n.Rc, 1.0, 1e-12);
  EXPECT_NEAR(n.D, g.D / g.Rc, 1e-12);
}

TEST(Transform, RejectsNonpositiveScale)
{
  EXPECT_THROW(transform(concentric(), 0.0), Error);
}

TEST(Validate, RejectsOverlappingAndEscapingHoles)
{
  auto overlap = DomainSpec::box(2, P(0, 0), P(10, 10)).add_hole(P(3, 5), 1.0).add_hole(P(4, 5), 1.0);
  EXPECT_THROW(validate(overlap), Error);
  auto escape = DomainSpec::ball(2, P(0, 0), 1.0).add_hole(P(0.8, 0), 0.5);
  EXPECT_THROW(validate(escape), Error);
}

TEST(PowerDiagram, SymmetricWallIsMidplane)
{
  const auto spec = DomainSpec::box(2, P(-4, -3), P(4, 3)).add_hole(P(-2, 0), 0.5).add_hole(P(2, 0), 0.5);
  const auto part = power_diagram(spec);
  ASSERT_EQ(part.cells.size(), 2u);
  const auto &w = part.cells[0].walls.at(0);
  EXPECT_NEAR(w.normal(1), 0.0, 1e-14);
  EXPECT_NEAR(w.offset / w.normal(0), 0.0, 1e-12);
}

TEST(PowerDiagram, RadicalAxis)
{
  const auto spec = DomainSpec::box(2, P(-5, -5), P(10, 5)).add_hole(P(0, 0), 1.0).add_hole(P(4, 0), 2.0);
  const auto part = power_diagram(spec);
  const auto &w = part.cells[0].walls.at(0);
  EXPECT_NEAR(w.offset / w.normal(0), 13.0 / 8.0, 1e-12);
  EXPECT_NEAR(w.normal(1), 0.0, 1e-14);
}

TEST(PowerDiagram, SingleHoleIsWholeDomain)
{
  const auto spec = DomainSpec::box(2, P(0, 0), P(2, 2)).add_hole(P(1, 1), 0.3);
  const auto part = power_diagram(spec);
  ASSERT_EQ(part.cells.size(), 1u);
  EXPECT_NEAR(part.cells[0].volume, domain_volume(spec), 1e-12);
  EXPECT_TRUE(hypothesis_order(part).ok);
}

TEST(PowerDiagram, VolumesSumToDomain)
{
  auto spec = DomainSpec::box(2, P(0, 0), P(6, 4));
  spec.add_hole(P(1, 1), 0.4).add_hole(P(3.5, 1.2), 0.7).add_hole(P(2, 3), 0.3).add_hole(P(5, 3), 0.5);
  const auto part = power_diagram(spec);
  double total = 0.0;
  for (const auto &c : part.cells)
  {
    total += c.volume;
  }
  EXPECT_NEAR(total / domain_volume(spec), 1.0, 1e-12);

  const auto disk = DomainSpec::ball(2, P(0, 0), 3.0).add_hole(P(-1, 0), 0.5).add_hole(P(1.2, 0.4), 0.8);
  const auto dpart = power_diagram(disk);
  total = 0.0;
  for (const auto &c : dpart.cells)
  {
    total += c.volume;
  }
  EXPECT_NEAR(total / domain_volume(disk), 1.0, 1e-9);
}

TEST(PowerDiagram, IdenticalRadiiGiveVoronoi)
{
  auto spec = DomainSpec::box(2, P(0, 0), P(6, 4));
  spec.add_hole(P(1, 1), 0.4).add_hole(P(3.5, 1.2), 0.4).add_hole(P(2, 3), 0.4);
  const auto part = power_diagram(spec);
  for (std::size_t i = 0; i < part.cells.size(); i++)
  {
    const auto &c = part.cells[i];
    for (std::size_t k = 0; k < c.walls.size(); k++)
    {
      const Point ci = spec.holes[i].center;
      const Point cj = spec.holes[c.wall_hole[k]].center;
      const Point mid = 0.5 * (ci + cj);
      const Point u = (cj - ci).normalized();
      const Point nrm = c.walls[k].normal.normalized();
      EXPECT_NEAR((nrm - u).norm(), 0.0, 1e-12);
      EXPECT_NEAR(c.walls[k].offset / c.walls[k].normal.norm(), u.dot(mid), 1e-12);
    }
  }
}

TEST(Hypothesis, CollinearHolesAccepted)
{
  auto spec = DomainSpec::box(2, P(0, 0), P(8, 2));
  spec.add_hole(P(1, 1), 0.3).add_hole(P(3, 1), 0.3).add_hole(P(5, 1), 0.3).add_hole(P(7, 1), 0.3);
  const auto res = hypothesis_order(power_diagram(spec));
  EXPECT_TRUE(res.ok);
  EXPECT_EQ(res.order.size(), 4u);
  EXPECT_EQ(res.failing_prefix_length, 0);
}

TEST(Hypothesis, LShapedArrangementFails)
{
  auto spec = DomainSpec::box(2, P(0, 0), P(4, 4));
  spec.add_hole(P(1, 1), 0.3).add_hole(P(1, 3), 0.3).add_hole(P(3, 1), 0.3);
  const auto res = hypothesis_order(power_diagram(spec));
  EXPECT_FALSE(res.ok);
  EXPECT_GT(res.failing_prefix_length, 0);
}

TEST(Hypothesis, ThreeDimensionalSampling)
{
  auto spec = DomainSpec::box(3, P(0, 0, 0), P(6, 2, 2));
  spec.add_hole(P(1, 1, 1), 0.3).add_hole(P(3, 1, 1), 0.3).add_hole(P(5, 1, 1), 0.3);
  HypothesisOptions opt;
  opt.samples_3d = 20000;
  EXPECT_TRUE(hypothesis_order(power_diagram(spec), opt).ok);
}

TEST(DiskPolygonArea, Oracles)
{
  const std::vector<Point> big = {P(-5, -5), P(5, -5), P(5, 5), P(-5, 5)};
  EXPECT_NEAR(disk_polygon_area(P(0, 0), 1.0, big), std::numbers::pi, 1e-12);
  const std::vector<Point> half = {P(0, -5), P(5, -5), P(5, 5), P(0, 5)};
  EXPECT_NEAR(disk_polygon_area(P(0, 0), 1.0, half), std::numbers::pi / 2.0, 1e-12);
  const std::vector<Point> inner = {P(-0.1, -0.1), P(0.1, -0.1), P(0.1, 0.1), P(-0.1, 0.1)};
  EXPECT_NEAR(disk_polygon_area(P(0, 0), 1.0, inner), 0.04, 1e-14);
}

TEST(ClipHalfspaces, UnitSquare)
{
  std::vector<Halfspace> hs = {{P(1, 0), 1.0}, {P(-1, 0), 0.0}, {P(0, 1), 1.0}, {P(0, -1), 0.0}};
  const auto poly = clip_halfspaces(2, hs);
  EXPECT_NEAR(poly.volume, 1.0, 1e-14);
  EXPECT_EQ(poly.vertices.size(), 4u);
  EXPECT_TRUE(point_in(hs, P(0.5, 0.5)));
  EXPECT_FALSE(point_in(hs, P(1.5, 0.5)));
}

TEST(ClipHalfspaces, UnitCube)
{
  std::vector<Halfspace> hs;
  for (int d = 0; d < 3; d++)
  {
    Point e = Point::Zero();
    e(d) = 1.0;
    hs.push_back({e, 1.0});
    hs.push_back({-e, 0.0});
  }
  hs.push_back({P(1, 1, 1), 1.5});
  const auto poly = clip_halfspaces(3, hs);
  EXPECT_NEAR(poly.volume, 0.5, 1e-12);
}
