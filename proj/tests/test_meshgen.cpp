// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <numbers>

#include <gtest/gtest.h>

#include "hodge/dec.hpp"
#include "hodge/meshgen.hpp"

using namespace hodge;

namespace
{

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

double min_angle_deg(const SimplicialMesh &m)
{
  double worst = 180.0;
  for (const auto &c : m.cells())
  {
    for (int i = 0; i < 3; i++)
    {
      const Point a = m.vertex(c[i]), b = m.vertex(c[(i + 1) % 3]), d = m.vertex(c[(i + 2) % 3]);
      const double cosv = (b - a).normalized().dot((d - a).normalized());
      worst = std::min(worst, std::acos(std::clamp(cosv, -1.0, 1.0)) * 180.0 / std::numbers::pi);
    }
  }
  return worst;
}

ErrorCode code_of(const std::string &text)
{
  try
  {
    parse_mesh(text);
  }
  catch (const Error &e)
  {
    return e.code();
  }
  return ErrorCode::Io;
}

const char *kTet = "dim 3\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ncells 1\n0 1 2 3\n";

}  // namespace

TEST(Mesh2d, UnitSquareQualityAndArea)
{
  const auto m = mesh2d(boundary_of(DomainSpec::box(2, P(0, 0), P(1, 1))), 0.1);
  validate(m);
  EXPECT_GE(min_angle_deg(m), 20.0);
  EXPECT_NEAR(m.volume(), 1.0, 1e-9);
  EXPECT_LE(m.h(), 0.1 * 1.05);
  EXPECT_EQ(m.euler_characteristic(), 1);
}

TEST(Mesh2d, AnnulusAndDiskEuler)
{
  const auto ann = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.15);
  validate(ann);
  EXPECT_EQ(ann.euler_characteristic(), 0);
  EXPECT_GE(min_angle_deg(ann), 20.0);
  const auto disk = mesh_domain(DomainSpec::ball(2, P(0, 0), 1.0), 0.1);
  validate(disk);
  EXPECT_EQ(disk.euler_characteristic(), 1);
  EXPECT_NEAR(disk.volume(), std::numbers::pi, 0.01);
}

TEST(Mesh2d, BoundaryTags)
{
  const auto m = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.2);
  int outer = 0, hole = 0;
  for (int f = 0; f < m.count(1); f++)
  {
    const int t = m.boundary_tags()[f];
    const Point x = m.barycenter(1, f);
    if (t == kOuter)
    {
      outer++;
      EXPECT_NEAR(x.norm(), 2.0, 0.01);
    }
    else if (t == 1)
    {
      hole++;
      EXPECT_NEAR(x.norm(), 1.0, 0.01);
    }
    else
    {
      EXPECT_EQ(t, kInterior);
    }
  }
  EXPECT_GT(outer, hole);
  EXPECT_GT(hole, 20);
}

TEST(Mesh2d, SizeFieldRefines)
{
  Mesh2dOptions opt;
  opt.h = 0.2;
  opt.size = [](const Point &x) { return x(0) < 0.5 ? 0.05 : 1.0; };
  const auto m = mesh2d(boundary_of(DomainSpec::box(2, P(0, 0), P(1, 1))), opt);
  int left = 0, right = 0;
  for (int c = 0; c < m.count(2); c++)
  {
    (m.barycenter(2, c)(0) < 0.5 ? left : right)++;
  }
  EXPECT_GT(left, 4 * right);
}

TEST(Mesh2d, SelfIntersectingBoundaryRejected)
{
  BoundaryDescription b;
  b.loops.push_back(polygon_loop({P(0, 0), P(1, 1), P(1, 0), P(0, 1)}, kOuter));
  EXPECT_THROW(mesh2d(b, 0.1), Error);
}

TEST(StructuredRectangle, Counts)
{
  const auto m = structured_rectangle(P(0, 0), P(2, 1), 4, 2);
  EXPECT_EQ(m.count(0), 15);
  EXPECT_EQ(m.count(2), 16);
  EXPECT_NEAR(m.volume(), 2.0, 1e-14);
}

TEST(Mesh3d, ShellEulerAndVolume)
{
  OuterBody outer;
  outer.kind = OuterBody::Kind::Ball;
  outer.radius = 2.0;
  const auto m = mesh3d_shell(P(0, 0, 0), 1.0, outer, 0.4);
  validate(m);
  // chi(S^2 x I) = chi(S^2) = 2
  EXPECT_EQ(m.euler_characteristic(), 2);
  EXPECT_NEAR(m.volume() / (4.0 / 3.0 * std::numbers::pi * 7.0), 1.0, 0.1);
}

TEST(Mesh3d, BoxOuter)
{
  const auto spec = DomainSpec::box(3, P(-1, -1, -1), P(1, 1, 1)).add_hole(P(0, 0, 0), 0.5);
  const double exact = 8.0 - 4.0 / 3.0 * std::numbers::pi * 0.125;
  const auto coarse = mesh_domain(spec, 0.3);
  const auto fine = mesh_domain(spec, 0.15);
  validate(coarse);
  EXPECT_EQ(coarse.euler_characteristic(), 2);
  // Box edges are cut by chords between rays, so the volume converges from below.
  EXPECT_LT(coarse.volume(), fine.volume());
  EXPECT_LT(fine.volume(), exact);
  EXPECT_LT(exact - fine.volume(), 0.5 * (exact - coarse.volume()));
}

TEST(Revolve, CylinderVolume)
{
  const auto profile = structured_rectangle(P(0, 0), P(1, 0.5), 4, 4);
  const auto m = revolve(profile, 48);
  validate(m);
  const double exact = std::numbers::pi * 0.25;
  const double polygon = 0.5 * 48 * 0.25 * std::sin(2.0 * std::numbers::pi / 48);
  EXPECT_NEAR(m.volume(), polygon, 1e-12);
  EXPECT_NEAR(m.volume() / exact, 1.0, 0.01);
  EXPECT_EQ(m.euler_characteristic(), 1);
}

TEST(Import, EmptyFileIsParseError)
{
  EXPECT_EQ(code_of(""), ErrorCode::Parse);
  EXPECT_EQ(code_of("dim 2\nvertices 0\n"), ErrorCode::Parse);
}

TEST(Import, FlippedTetIsInverted)
{
  EXPECT_NO_THROW(parse_mesh(kTet));
  const std::string flipped = "dim 3\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ncells 1\n1 0 2 3\n";
  EXPECT_EQ(code_of(flipped), ErrorCode::InvertedSimplex);
}

TEST(Import, DuplicateAndOutOfRange)
{
  EXPECT_EQ(code_of("dim 2\nvertices 3\n0 0\n1 0\n0 1\ncells 2\n0 1 2\n1 2 0\n"),
            ErrorCode::DuplicateSimplex);
  EXPECT_EQ(code_of("dim 2\nvertices 3\n0 0\n1 0\n0 1\ncells 1\n0 1 3\n"), ErrorCode::Parse);
}

TEST(Import, RoundTrip)
{
  const auto m = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0.3, 0), 0.7), 0.3);
  const std::string path = ::testing::TempDir() + "roundtrip.mesh";
  export_mesh(m, path);
  const auto r = import_mesh(path);
  std::remove(path.c_str());
  EXPECT_EQ(format_mesh(r), format_mesh(m));
  EXPECT_EQ(r.boundary_tags(), m.boundary_tags());
  EXPECT_THROW(import_mesh("/nonexistent/dir/x.mesh"), Error);
}

TEST(Submesh, IdentityAndHalfPlane)
{
  const auto m = mesh2d(boundary_of(DomainSpec::box(2, P(0, 0), P(1, 1))), 0.05);
  const auto all = submesh(m, [](const Point &) { return true; });
  EXPECT_EQ(format_mesh(all.mesh), format_mesh(m));
  for (int p = 0; p <= 2; p++)
  {
    ASSERT_EQ(static_cast<int>(all.parent[p].size()), m.count(p));
    for (int k = 0; k < m.count(p); k++)
    {
      EXPECT_EQ(all.parent[p][k], k);
    }
  }
  const auto half = submesh(m, [](const Point &x) { return x(0) < 0.5; });
  EXPECT_NEAR(half.mesh.volume(), 0.5, m.h());
  validate(half.mesh);
  for (int p = 0; p <= 2; p++)
  {
    for (int k = 0; k < half.mesh.count(p); k++)
    {
      Simplex s = half.mesh.simplices(p)[k];
      for (int i = 0; i <= p; i++)
      {
        s[i] = half.parent[0][s[i]];
      }
      EXPECT_EQ(s, m.simplices(p)[half.parent[p][k]]);
    }
  }
  EXPECT_THROW(submesh(m, [](const Point &) { return false; }), Error);
}
