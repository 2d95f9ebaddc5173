// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "hodge/cech.hpp"
#include "hodge/meshgen.hpp"

using namespace hodge;

namespace
{

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

double m_norm(const SparseMatrix &M, const Vector &x) { return std::sqrt(x.dot(M * x)); }

SimplicialMesh rectangle(double h) { return mesh2d(boundary_of(DomainSpec::box(2, P(0, 0), P(2, 1))), h); }

Cover halves(const SimplicialMesh &m, double w, int max_order = 2)
{
  return predicate_cover(m,
                         {[w](const Point &x) { return x(0) < 1.0 + w; },
                          [w](const Point &x) { return x(0) > 1.0 - w; }},
                         max_order, w);
}

DomainSpec three_holes()
{
  return DomainSpec::box(2, P(0, 0), P(6, 2))
    .add_hole(P(1, 1), 0.3)
    .add_hole(P(3, 1), 0.3)
    .add_hole(P(5, 1), 0.3);
}

DomainSpec triangle_holes()
{
  return DomainSpec::box(2, P(0, 0), P(4, 4))
    .add_hole(P(1, 1), 0.3)
    .add_hole(P(3, 1), 0.3)
    .add_hole(P(2, 3), 0.3);
}

Vector random_vector(int n, unsigned seed)
{
  std::srand(seed);
  return Vector::Random(n);
}

}  // namespace

TEST(PartitionOfUnity, SumsToOneAndIsNonnegative)
{
  const auto m = rectangle(0.1);
  const Cover c = halves(m, 0.3);
  const auto pou = partition_of_unity(c);
  Vector sum = Vector::Zero(m.count(0));
  for (const auto &r : pou.rho)
  {
    EXPECT_GE(r.minCoeff(), 0.0);
    sum += r;
  }
  EXPECT_NEAR((sum.array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
}

TEST(PartitionOfUnity, GradientScalesWithInverseWidth)
{
  const auto m = rectangle(0.05);
  for (double w : {0.2, 0.4})
  {
    const auto pou = partition_of_unity(halves(m, w), w);
    EXPECT_GT(pou.c_rho, 0.25 / (w * w));
    EXPECT_LT(pou.c_rho, 16.0 / (w * w));
  }
}

TEST(PartitionOfUnity, SingleElement)
{
  const auto m = rectangle(0.2);
  const auto pou = partition_of_unity(single_element_cover(m), 0.1);
  ASSERT_EQ(pou.rho.size(), 1u);
  EXPECT_EQ((pou.rho[0].array() - 1.0).abs().maxCoeff(), 0.0);
  EXPECT_EQ(pou.c_rho, 0.0);
}

TEST(LocalPrimitive, LeastNormOnFunctions)
{
  const auto m = rectangle(0.1);
  const Vector f = random_vector(m.count(0), 3);
  const Vector omega = coboundary(m, 0) * f;
  const auto r = local_primitive(m, omega, 1);
  EXPECT_LE(r.residual, 1e-8);
  const SparseMatrix M0 = mass_matrix(m, 0);
  const double mean = Vector::Ones(m.count(0)).dot(M0 * f) / m.volume();
  const Vector centered = (f.array() - mean).matrix();
  EXPECT_LE(m_norm(M0, r.theta), m_norm(M0, centered) * (1.0 + 1e-8));
  EXPECT_NEAR(m_norm(M0, r.theta - centered), 0.0, 1e-6 * m_norm(M0, centered));
}

TEST(LocalPrimitive, TopDegreeAndOrthogonality)
{
  const auto m = rectangle(0.1);
  const Vector a = random_vector(m.count(1), 5);
  const Vector omega = coboundary(m, 1) * a;
  const auto r = local_primitive(m, omega, 2);
  EXPECT_LE(r.residual, 1e-8);
  // The least-norm primitive is orthogonal to gradients.
  const Vector g = coboundary(m, 0).transpose() * (mass_matrix(m, 1) * r.theta);
  EXPECT_LE(g.norm(), 1e-8 * r.theta.norm());
}

TEST(LocalPrimitive, ZeroAndNotExact)
{
  const auto m = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.2);
  const auto z = local_primitive(m, Vector::Zero(m.count(1)), 1);
  EXPECT_EQ(z.theta.norm(), 0.0);
  const auto h = harmonic_basis(up_pencil(m, 1));
  ASSERT_EQ(h.size(), 1u);
  try
  {
    local_primitive(m, h[0], 1);
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::NotExact);
  }
}

TEST(CechComplex, DeltaSquaresToZero)
{
  const auto m = mesh_domain(triangle_holes(), 0.2);
  const Cover c = power_cover(m, power_diagram(triangle_holes()), 0.4, 3);
  ASSERT_FALSE(c.of_order(3).empty());
  for (int r = 0; r <= 2; r++)
  {
    const CechCochain a = random_cech(c, 0, r, 7 + r);
    const CechCochain dd = cech_delta(c, cech_delta(c, a));
    EXPECT_LE(cech_norm(dd), 1e-12 * cech_norm(a));
  }
}

TEST(CechComplex, DeltaCommutesWithD)
{
  const auto m = mesh_domain(triangle_holes(), 0.2);
  const Cover c = power_cover(m, power_diagram(triangle_holes()), 0.4, 3);
  for (int q = 0; q <= 1; q++)
  {
    const CechCochain a = random_cech(c, q, 0, 11 + q);
    const CechCochain x = cech_d(c, cech_delta(c, a));
    const CechCochain y = cech_delta(c, cech_d(c, a));
    double diff = 0.0;
    for (const auto &[I, v] : x.values)
    {
      diff = std::max(diff, (v - y.values.at(I)).cwiseAbs().maxCoeff());
    }
    EXPECT_LE(diff, 1e-12);
  }
}

TEST(CechComplex, HomotopyIdentity)
{
  const auto m = mesh_domain(triangle_holes(), 0.2);
  const Cover c = power_cover(m, power_diagram(triangle_holes()), 0.4, 3);
  const auto pou = partition_of_unity(c);
  const CechCochain a = random_cech(c, 1, 0, 19);
  const CechCochain x = cech_delta(c, cech_homotopy(c, pou, a));
  const CechCochain y = cech_homotopy(c, pou, cech_delta(c, a));
  double diff = 0.0;
  for (const auto &[I, v] : a.values)
  {
    Eigen::MatrixXd s = -v;
    if (auto it = x.values.find(I); it != x.values.end())
    {
      s += it->second;
    }
    if (auto it = y.values.find(I); it != y.values.end())
    {
      s += it->second;
    }
    const auto &mask = c.simplex_mask(I, 0);
    for (int k = 0; k < s.rows(); k++)
    {
      if (mask[k])
      {
        diff = std::max(diff, s.row(k).cwiseAbs().maxCoeff());
      }
    }
  }
  EXPECT_LE(diff, 1e-12);
}

TEST(CechPrimitive, TrivialCover)
{
  const auto m = rectangle(0.1);
  const Cover c = single_element_cover(m, 2);
  const auto pou = partition_of_unity(c, 0.1);
  const Vector omega = coboundary(m, 0) * random_vector(m.count(0), 23);
  const auto r = cech_primitive(m, c, pou, omega, 1);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(CechPrimitive, PowerCoverFunctions)
{
  const auto spec = three_holes();
  const auto m = mesh_domain(spec, 0.15);
  const Cover c = power_cover(m, power_diagram(spec), 0.4, 2);
  const auto pou = partition_of_unity(c);
  Vector f(m.count(0));
  for (int v = 0; v < m.count(0); v++)
  {
    f(v) = std::sin(m.vertex(v)(0)) * m.vertex(v)(1);
  }
  const Vector omega = coboundary(m, 0) * f;
  const auto r = cech_primitive(m, c, pou, omega, 1);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(CechPrimitive, RejectsHarmonicInput)
{
  const auto spec = three_holes();
  const auto m = mesh_domain(spec, 0.2);
  const Cover c = power_cover(m, power_diagram(spec), 0.4, 2);
  const auto pou = partition_of_unity(c);
  const auto h = harmonic_basis(up_pencil(m, 1));
  ASSERT_EQ(h.size(), 3u);
  EXPECT_THROW(cech_primitive(m, c, pou, h[0], 1), Error);
}

TEST(GluedPrimitive, QuotientWithinEigenRange)
{
  const auto spec = three_holes();
  const auto m = mesh_domain(spec, 0.15);
  const Cover c = power_cover(m, power_diagram(spec), 0.4, 2);
  const auto pou = partition_of_unity(c);
  const auto g = glued_primitive(m, c, pou, 1);
  EXPECT_EQ(g.k_p, static_cast<int>(c.of_order(2).size()));
  ASSERT_EQ(static_cast<int>(g.eigenvalues.size()), 1 + g.k_p);
  EXPECT_GE(g.quotient, g.eigenvalues.front() * (1.0 - 1e-8));
  EXPECT_LE(g.quotient, g.eigenvalues.back() * (1.0 + 1e-8));
  EXPECT_LE(g.residual, 1e-8);
  EXPECT_LE(g.constraint_residual, 1e-8);
}

TEST(GluedPrimitive, SingleElementGivesFirstEigenvalue)
{
  const auto m = rectangle(0.1);
  const Cover c = single_element_cover(m, 2);
  const auto pou = partition_of_unity(c, 0.1);
  const auto g = glued_primitive(m, c, pou, 1);
  EXPECT_EQ(g.k_p, 0);
  EXPECT_NEAR(g.quotient / first_exact_eigenvalue(m, 1), 1.0, 1e-8);
}

TEST(SphereCover, SeparatedAndCovering)
{
  const auto spec = DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0);
  const auto m = mesh_domain(spec, 0.1);
  SphereCoverInfo info;
  SphereCoverOptions opt;
  opt.r0_coeff = 1.0;
  opt.separation_divisor = 4.0;
  opt.level = 2;
  const Cover c = sphere_cover(m, spec, opt, &info);
  ASSERT_GE(info.centers.size(), 2u);
  for (std::size_t i = 0; i < info.centers.size(); i++)
  {
    EXPECT_NEAR((info.centers[i] - P(0, 0)).norm(), 1.0, 1e-12);
    for (std::size_t j = i + 1; j < info.centers.size(); j++)
    {
      EXPECT_GE((info.centers[i] - info.centers[j]).norm(), info.separation * (1.0 - 1e-12));
    }
  }
  // A maximal separated set on the unit circle has at most 2 pi / separation + 1 points.
  EXPECT_LE(info.centers.size(), 2.0 * M_PI / info.separation + 1.0);
  EXPECT_EQ(c.size(), static_cast<int>(info.centers.size()));
}

TEST(Hypotheses, PowerCoverPassesSplitAnnulusFails)
{
  const auto spec = three_holes();
  const auto m = mesh_domain(spec, 0.2);
  EXPECT_EQ(check_gluing_hypotheses(power_cover(m, power_diagram(spec), 0.4, 2), 1), "");
  // Upper and lower bands of an annulus meet in two pieces.
  const auto ann = mesh_domain(DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 1.0), 0.2);
  const Cover bands = predicate_cover(
    ann, {[](const Point &x) { return x(1) > -0.3; }, [](const Point &x) { return x(1) < 0.3; }},
    2, 0.3);
  EXPECT_NE(check_gluing_hypotheses(bands, 1), "");
}

TEST(CoverCsv, Header)
{
  const auto m = rectangle(0.2);
  const Cover c = halves(m, 0.3);
  const std::string csv = cover_csv(c);
  EXPECT_FALSE(csv.empty());
  EXPECT_NE(partition_csv(c, partition_of_unity(c)).find('\n'), std::string::npos);
}
