// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_PREDICATES_HPP
#define HODGE_PREDICATES_HPP

namespace hodge::predicates
{

// Sign of the orientation determinant: > 0 when (a, b, c) turn counterclockwise.
int orient2d(const double *a, const double *b, const double *c);

// > 0 when d lies strictly inside the circle through the counterclockwise triangle (a, b, c).
int incircle(const double *a, const double *b, const double *c, const double *d);

}  // namespace hodge::predicates

#endif  // HODGE_PREDICATES_HPP
