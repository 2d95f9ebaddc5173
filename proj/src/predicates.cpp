// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "predicates.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace hodge::predicates
{

namespace
{

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;
// Forward error bounds in the style of Shewchuk's stage-A filters.
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

template <typename T>
int sign_of(const T &v)
{
  return (v > 0) ? 1 : ((v < 0) ? -1 : 0);
}

}  // namespace

int orient2d(const double *a, const double *b, const double *c)
{
  const double l = (a[0] - c[0]) * (b[1] - c[1]);
  const double r = (a[1] - c[1]) * (b[0] - c[0]);
  const double det = l - r;
  const double bound = kOrientBound * (std::abs(l) + std::abs(r));
  if (det > bound || -det > bound)
  {
    return det > 0 ? 1 : -1;
  }
  Rational ax(a[0]), ay(a[1]), bx(b[0]), by(b[1]), cx(c[0]), cy(c[1]);
  return sign_of(Rational((ax - cx) * (by - cy) - (ay - cy) * (bx - cx)));
}

int incircle(const double *a, const double *b, const double *c, const double *d)
{
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound || -det > bound)
  {
    return det > 0 ? 1 : -1;
  }
  Rational dx(d[0]), dy(d[1]);
  Rational ex = Rational(a[0]) - dx, ey = Rational(a[1]) - dy;
  Rational fx = Rational(b[0]) - dx, fy = Rational(b[1]) - dy;
  Rational gx = Rational(c[0]) - dx, gy = Rational(c[1]) - dy;
  Rational exact = (ex * ex + ey * ey) * (fx * gy - gx * fy) +
                   (fx * fx + fy * fy) * (gx * ey - ex * gy) +
                   (gx * gx + gy * gy) * (ex * fy - fx * ey);
  return sign_of(exact);
}

}  // namespace hodge::predicates
