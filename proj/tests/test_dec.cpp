// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "hodge/dec.hpp"
#include "hodge/families.hpp"
#include "hodge/meshgen.hpp"

using namespace hodge;

namespace
{

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

AnalyticForm constant_form(int n, int p, std::vector<double> comps)
{
  AnalyticForm f;
  f.dim = n;
  f.degree = p;
  f.components = [comps](const Point &, double *c) {
    for (std::size_t i = 0; i < comps.size(); i++)
    {
      c[i] = comps[i];
    }
  };
  return f;
}

// f = x^2 y + 3 y^3 - x z, with df and the 1-form a = (y^2, x z, x) and da.
AnalyticForm f0(int n)
{
  AnalyticForm f;
  f.dim = n;
  f.degree = 0;
  f.components = [](const Point &x, double *c) {
    c[0] = x(0) * x(0) * x(1) + 3 * x(1) * x(1) * x(1) - x(0) * x(2);
  };
  return f;
}

AnalyticForm df0(int n)
{
  AnalyticForm f;
  f.dim = n;
  f.degree = 1;
  f.components = [n](const Point &x, double *c) {
    c[0] = 2 * x(0) * x(1) - x(2);
    c[1] = x(0) * x(0) + 9 * x(1) * x(1);
    if (n == 3)
    {
      c[2] = -x(0);
    }
  };
  return f;
}

AnalyticForm a1()
{
  AnalyticForm f;
  f.dim = 3;
  f.degree = 1;
  f.components = [](const Point &x, double *c) {
    c[0] = x(1) * x(1);
    c[1] = x(0) * x(2);
    c[2] = x(0);
  };
  return f;
}

// da = (z - 2y) dx^dy + dx^dz - x dy^dz; basis {01, 02, 12}
AnalyticForm da1()
{
  AnalyticForm f;
  f.dim = 3;
  f.degree = 2;
  f.components = [](const Point &x, double *c) {
    c[0] = x(2) - 2 * x(1);
    c[1] = 1.0;
    c[2] = -x(0);
  };
  return f;
}

SimplicialMesh square(double h) { return mesh2d(boundary_of(DomainSpec::box(2, P(0, 0), P(1, 1))), h); }

SimplicialMesh shell(double h)
{
  OuterBody outer;
  outer.radius = 2.0;
  return mesh3d_shell(P(0, 0, 0), 1.0, outer, h);
}

}  // namespace

TEST(Coboundary, ConstantsAndTopDegree)
{
  const auto m = square(0.2);
  const Vector ones = Vector::Ones(m.count(0));
  EXPECT_EQ((coboundary(m, 0) * ones).norm(), 0.0);
  const SparseMatrix top = coboundary(m, 2);
  EXPECT_EQ(top.nonZeros(), 0);
  EXPECT_EQ(top.cols(), m.count(2));
}

TEST(Coboundary, SquaresToZero)
{
  const auto m2 = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0.2, 0), 0.7), 0.2);
  for (int p = 0; p < 2; p++)
  {
    EXPECT_TRUE(coboundary_squares_to_zero(m2, p));
  }
  const auto m3 = shell(0.5);
  for (int p = 0; p < 3; p++)
  {
    EXPECT_TRUE(coboundary_squares_to_zero(m3, p));
    const SparseMatrix DD = coboundary(m3, p + 1) * coboundary(m3, p);
    EXPECT_EQ(DD.norm(), 0.0);
  }
}

TEST(Coboundary, IncidenceEntries)
{
  const auto m = structured_rectangle(P(0, 0), P(1, 1), 1, 1);
  const IntSparseMatrix D0 = coboundary_int(m, 0);
  for (int e = 0; e < m.count(1); e++)
  {
    const auto &s = m.simplices(1)[e];
    EXPECT_EQ(D0.coeff(e, s[0]), -1);
    EXPECT_EQ(D0.coeff(e, s[1]), 1);
  }
}

TEST(MassMatrix, ExactOnAffineData)
{
  const auto m = square(0.1);
  const SparseMatrix M0 = mass_matrix(m, 0);
  const Vector ones = Vector::Ones(m.count(0));
  EXPECT_NEAR(ones.dot(M0 * ones), 1.0, 1e-12);
  const Vector dx = de_rham_sample(m, constant_form(2, 1, {1.0, 0.0})).values;
  const Vector dy = de_rham_sample(m, constant_form(2, 1, {0.0, 1.0})).values;
  const SparseMatrix M1 = mass_matrix(m, 1);
  EXPECT_NEAR(dx.dot(M1 * dx), 1.0, 1e-12);
  EXPECT_NEAR(dx.dot(M1 * dy), 0.0, 1e-12);
  const Vector vol = de_rham_sample(m, constant_form(2, 2, {1.0})).values;
  EXPECT_NEAR(vol.dot(mass_matrix(m, 2) * vol), 1.0, 1e-12);
  EXPECT_NEAR(vol.cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(MassMatrix, SymmetricPositiveDefinite)
{
  const auto m = shell(0.6);
  for (int p = 0; p <= 3; p++)
  {
    const SparseMatrix M = mass_matrix(m, p);
    EXPECT_NEAR((SparseMatrix(M.transpose()) - M).norm(), 0.0, 1e-14 * M.norm());
    const Vector x = Vector::Random(M.rows());
    EXPECT_GT(x.dot(M * x), 0.0);
  }
}

TEST(Rayleigh, CoordinateFunction)
{
  const auto m = square(0.1);
  const auto pencil = up_pencil(m, 0);
  Vector x(m.count(0));
  for (int v = 0; v < m.count(0); v++)
  {
    x(v) = m.vertex(v)(0);
  }
  EXPECT_NEAR(rayleigh(pencil, x), 3.0, 1e-10);
  EXPECT_NEAR(rayleigh(pencil, (x.array() - 0.5).matrix()), 12.0, 1e-9);
  EXPECT_NEAR(rayleigh(pencil, Vector::Ones(m.count(0))), 0.0, 1e-14);
}

TEST(Betti, Annulus)
{
  const auto m = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.2);
  EXPECT_EQ(betti_numbers(m), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(m.euler_characteristic(), 0);
}

TEST(Betti, Disk)
{
  const auto m = mesh_domain(DomainSpec::ball(2, P(0, 0), 1.0), 0.2);
  EXPECT_EQ(betti_numbers(m), (std::vector<int>{1, 0, 0}));
}

TEST(Betti, SphericalShell)
{
  EXPECT_EQ(betti_numbers(shell(0.5)), (std::vector<int>{1, 0, 1, 0}));
}

TEST(Betti, LimitDomainHasTwoComponents)
{
  const auto m = mesh2d(aeps_limit_boundary(0.1), 0.1);
  EXPECT_EQ(betti(m, 0), 2);
  EXPECT_EQ(betti(m, 1), 0);
  int count = 0;
  vertex_components(m, &count);
  EXPECT_EQ(count, 2);
}

TEST(Betti, TwoHoles)
{
  const auto spec = DomainSpec::box(2, P(0, 0), P(4, 2)).add_hole(P(1, 1), 0.4).add_hole(P(3, 1), 0.4);
  EXPECT_EQ(betti_numbers(mesh_domain(spec, 0.2)), (std::vector<int>{1, 2, 0}));
}

TEST(Rank, MatchesBetti)
{
  const auto m = shell(0.5);
  const RankInfo r0 = coboundary_rank(m, 0);
  EXPECT_EQ(r0.rank, m.count(0) - 1);
  EXPECT_EQ(static_cast<int>(r0.independent_columns.size()), r0.rank);
  const RankInfo small_prime = coboundary_rank(m, 1, 65521u);
  EXPECT_EQ(small_prime.rank, coboundary_rank(m, 1).rank);
}

TEST(DeRham, ConstantFormOnEdges)
{
  const auto m = structured_rectangle(P(0, 0), P(1, 1), 1, 1);
  const Vector dx = de_rham_sample(m, constant_form(2, 1, {1.0, 0.0})).values;
  for (int e = 0; e < m.count(1); e++)
  {
    const auto &s = m.simplices(1)[e];
    EXPECT_NEAR(dx(e), m.vertex(s[1])(0) - m.vertex(s[0])(0), 1e-15);
  }
  const int bottom = m.find(1, sorted(make_simplex({0, 1}), 1));
  ASSERT_GE(bottom, 0);
  EXPECT_NEAR(dx(bottom), 1.0, 1e-15);
}

TEST(DeRham, StokesOnPolynomialData)
{
  const auto m = square(0.2);
  const Vector f = de_rham_sample(m, f0(2)).values;
  const Vector df = de_rham_sample(m, df0(2)).values;
  EXPECT_NEAR((coboundary(m, 0) * f - df).norm(), 0.0, 1e-12 * df.norm());
  const auto s = shell(0.6);
  const Vector a = de_rham_sample(s, a1()).values;
  const Vector da = de_rham_sample(s, da1()).values;
  EXPECT_NEAR((coboundary(s, 1) * a - da).norm(), 0.0, 1e-12 * da.norm());
  const Vector ddf = coboundary(s, 1) * de_rham_sample(s, df0(3)).values;
  EXPECT_NEAR(ddf.norm(), 0.0, 1e-12);
}

TEST(DeRham, SingularSimplicesFlagged)
{
  const auto m = structured_rectangle(P(-1, -1), P(1, 1), 2, 2);
  std::vector<int> flagged;
  const auto w = harmonic_form(2, 1);
  de_rham_sample(m, w, &flagged);
  EXPECT_FALSE(flagged.empty());
}

TEST(ExportCoo, Header)
{
  const auto m = structured_rectangle(P(0, 0), P(1, 1), 2, 2);
  const SparseMatrix D = coboundary(m, 0);
  const std::string path = ::testing::TempDir() + "d0.coo";
  export_coo(D, path);
  std::ifstream in(path);
  long rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  std::remove(path.c_str());
  EXPECT_EQ(rows, D.rows());
  EXPECT_EQ(cols, D.cols());
  EXPECT_EQ(nnz, D.nonZeros());
}
