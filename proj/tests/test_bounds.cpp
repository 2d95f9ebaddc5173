// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "hodge/bounds.hpp"

using namespace hodge;

namespace
{

Point P(double x, double y, double z = 0.0) { return Point(x, y, z); }

McGowanInput uniform(int p, int k0, double a, double pair, double triple, double c)
{
  McGowanInput in;
  in.p = p;
  in.c_rho = c;
  in.piece.assign(k0, a);
  in.pair.assign(k0 * k0, pair);
  if (p == 3)
  {
    in.triple.assign(k0 * k0 * k0, triple);
  }
  return in;
}

}  // namespace

TEST(AnnulusFactor, PlanarOneForms)
{
  const auto r = annulus_factor(2, 1, 4.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(r.value, 1.0 / (16.0 * 65536.0));
  EXPECT_FALSE(r.explicit_constant);
  EXPECT_EQ(r.degree, 1);
  EXPECT_EQ(r.input("D"), 4.0);
}

TEST(AnnulusFactor, HigherDegreeExponent)
{
  const double D = 5.0, Rc = 0.7;
  const auto r = annulus_factor(3, 2, D, Rc, Rc);
  EXPECT_NEAR(r.value / (std::pow(Rc / D, 13) / (D * D)), 1.0, 1e-14);
  // Small holes leave the min-branch at 1; large holes shrink it.
  EXPECT_NEAR(annulus_factor(3, 2, D, Rc, 0.1).value, r.value, 1e-14 * r.value);
  EXPECT_LT(annulus_factor(3, 2, D, Rc, 2.0).value, r.value);
}

TEST(AnnulusFactor, MonotoneInContactRadius)
{
  double prev = 0.0;
  for (double Rc : {0.1, 0.2, 0.4, 0.8})
  {
    const double v = annulus_factor(2, 1, 4.0, Rc, 1.0).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(AnnulusFactor, Errors)
{
  EXPECT_THROW(annulus_factor(2, 2, 4.0, 1.0, 1.0), Error);
  EXPECT_THROW(annulus_factor(2, 1, -4.0, 1.0, 1.0), Error);
  EXPECT_THROW(annulus_factor(2, 1, 1.0, 2.0, 1.0), Error);
  EXPECT_THROW(annulus_factor(2, 1, 4.0, 1.0, std::nan("")), Error);
}

TEST(UnionNeumann, Examples)
{
  const auto r = union_neumann_bound(1.0, 2.0, 4.0, 4.0);
  EXPECT_DOUBLE_EQ(r.value, 1.0 / 16.0);
  EXPECT_TRUE(r.explicit_constant);
  EXPECT_EQ(union_neumann_bound(0.0, 2.0, 4.0, 4.0).value, 0.0);
  EXPECT_DOUBLE_EQ(union_neumann_bound(1.0, 4.0, 3.0, kInfinity).value, 3.0 / 128.0);
  EXPECT_THROW(union_neumann_bound(3.0, 2.0, 4.0, 4.0), Error);
  EXPECT_THROW(union_neumann_bound(1.0, 2.0, kInfinity, kInfinity), Error);
}

TEST(McGowan, DegreeOne)
{
  McGowanInput in;
  in.p = 1;
  in.piece = {2.0, 2.0};
  EXPECT_DOUBLE_EQ(mcgowan_bounds(in).value, 1.0);
  in.piece = {3.0};
  EXPECT_DOUBLE_EQ(mcgowan_bounds(in).value, 3.0);
  in.piece = {1.0, 2.0, kInfinity};
  EXPECT_DOUBLE_EQ(mcgowan_bounds(in).value, 2.0 / 3.0);
  EXPECT_EQ(mcgowan_bounds(in).index, "1+k_1");
}

TEST(McGowan, DegreeTwoByHand)
{
  // k0 = 1: sum = 1/a + (c/b + 1)(2/a)
  const auto r = mcgowan_bounds(uniform(2, 1, 2.0, 4.0, 0.0, 1.0));
  EXPECT_DOUBLE_EQ(r.value, 1.0 / (8.0 * (0.5 + 1.25)));
  // Empty pairs carry infinity and drop the c-term.
  auto in = uniform(2, 2, 2.0, kInfinity, 0.0, 5.0);
  in.pair[0] = in.pair[3] = 4.0;
  const double s = 2 * (0.5 + (5.0 / 4.0 + 1.0) * 1.0 + 1.0);
  EXPECT_DOUBLE_EQ(mcgowan_bounds(in).value, 1.0 / (16.0 * s));
  EXPECT_THROW(mcgowan_bounds(uniform(2, 2, 1.0, 0.0, 0.0, 0.0)), Error);
}

TEST(McGowan, DegreeThreeCollapsedAleph)
{
  const double a = 3.0;
  for (int k0 : {1, 2, 4})
  {
    const auto in = uniform(3, k0, a, a, a, 0.0);
    const double aleph = k0 * (1.0 / a + k0 * (2.0 / a));
    EXPECT_NEAR(mcgowan_aleph(in), aleph, 1e-14 * aleph);
    EXPECT_NEAR(mcgowan_bounds(in).value, 1.0 / (18.0 * k0 * k0 * aleph), 1e-14);
  }
}

TEST(McGowan, DegreeThreeByHand)
{
  // k0 = 1, a = 2, pair 4, triple 8, c = 1:
  // 1/2 + (1/4 + 1)(1) + 1 (1/8 + 1) 3 (1)(1/4)
  const auto in = uniform(3, 1, 2.0, 4.0, 8.0, 1.0);
  EXPECT_DOUBLE_EQ(mcgowan_aleph(in), 2.59375);
  EXPECT_DOUBLE_EQ(mcgowan_bounds(in).value, 1.0 / (18.0 * 2.59375));
  auto missing = in;
  missing.triple.clear();
  EXPECT_THROW(mcgowan_bounds(missing), Error);
}

TEST(ModifiedMcGowan, Examples)
{
  EXPECT_DOUBLE_EQ(modified_mcgowan_factor(1.0, 1.0, 1.0, 1.0).value, 0.25);
  EXPECT_DOUBLE_EQ(modified_mcgowan_factor(2.0, 3.0, 1.0, 0.0).value, 1.0 / (0.5 + 1.0 / 3.0));
  EXPECT_DOUBLE_EQ(modified_mcgowan_factor(2.0, 3.0, kInfinity, 7.0).value,
                   modified_mcgowan_factor(2.0, 3.0, 1.0, 0.0).value);
}

TEST(MultiHole, SingleHoleMatchesAnnulus)
{
  const auto [a, b] = multi_hole_factors(3, 2, 6.0, 0.5, 0.8, 0.8, 1, 0);
  EXPECT_NEAR(b.value / annulus_factor(3, 2, 6.0, 0.5, 0.8).value, 1.0, 1e-14);
  const auto [c, d] = multi_hole_factors(2, 1, 6.0, 0.5, 0.8, 0.8, 1, 0);
  EXPECT_NEAR(d.value / annulus_factor(2, 1, 6.0, 0.5, 0.8).value, 1.0, 1e-14);
  EXPECT_NEAR(c.value, d.value, 1e-14 * d.value);
}

TEST(MultiHole, OrderedExtraFactor)
{
  const auto [a, b] = multi_hole_factors(2, 1, 10.0, 1.0, 1.0, 1.0, 2, 1);
  EXPECT_NEAR(b.value / annulus_factor(2, 1, 10.0, 1.0, 1.0).value, 1e-2, 1e-16);
  EXPECT_NEAR(a.value / annulus_factor(2, 1, 10.0, 1.0, 1.0).value, 0.5, 1e-14);
  EXPECT_EQ(a.index, "1+k_1 = 2");
}

TEST(MultiHole, IdenticalHoles)
{
  const auto r = identical_holes_factor(3, 2, 6.0, 0.5, 0.8, 3);
  EXPECT_DOUBLE_EQ(r.value, multi_hole_factors(3, 2, 6.0, 0.5, 0.8, 0.8, 3, 0).second.value);
}

TEST(Convex, Examples)
{
  EXPECT_DOUBLE_EQ(convex_and_fk_factors(1.0).first.value, 1.0);
  EXPECT_DOUBLE_EQ(convex_and_fk_factors(2.0).first.value, 0.25);
  EXPECT_DOUBLE_EQ(convex_and_fk_factors(2.0).second.value, 0.25);
  EXPECT_THROW(convex_and_fk_factors(0.0), Error);
}

TEST(BoundTable, SingleHoleAnnulus)
{
  const auto spec = DomainSpec::ball(2, P(0, 0), 2.0).add_hole(P(0, 0), 0.5);
  const auto rows = bound_table(spec, 1);
  ASSERT_GE(rows.size(), 4u);
  EXPECT_EQ(rows[0].id, "annulus_p1");
  EXPECT_DOUBLE_EQ(rows[0].value, annulus_factor(2, 1, 4.0, 1.5, 0.5).value);
  const std::string text = bound_table_text(rows);
  EXPECT_NE(text.find("annulus_p1"), std::string::npos);
  const std::string csv = bound_table_csv(rows);
  EXPECT_EQ(csv.rfind("id,degree,index,value,explicit_constant,formula,inputs", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rows.size() + 1);
}

TEST(BoundReport, MissingInput)
{
  const auto r = convex_and_fk_factors(2.0).first;
  EXPECT_THROW(r.input("Rc"), Error);
}
