// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_FAMILIES_HPP
#define HODGE_FAMILIES_HPP

#include <functional>
#include <optional>
#include <string>

#include "hodge/curve.hpp"
#include "hodge/form.hpp"
#include "hodge/geometry.hpp"
#include "hodge/meshgen.hpp"

namespace hodge
{

enum class FamilyId
{
  Annulus,
  Dumbbell,
  Aeps,
  MultiHoleAeps
};

const char *to_string(FamilyId id);
FamilyId parse_family(const std::string &name);

struct FamilySpec
{
  FamilyId id = FamilyId::Aeps;
  int n = 2;
  int p = 0;
  double eps = 0.1;
  // Annulus radii.
  double outer_radius = 2.0;
  double hole_radius = 1.0;
  // Multi-hole family: total hole count (the unit hole included) and extra hole radius.
  int holes = 1;
  double extra_radius = 0.05;
  // Apex rounding radius; negative selects eps^n / 10, zero keeps the corner.
  double apex_radius = -1.0;
  // Azimuthal sectors for 3D surfaces of revolution.
  int sectors = 32;
};

void validate(const FamilySpec &spec);
std::string to_string(const FamilySpec &spec);

// Cubic smoothstep: 0 on [0, eps/3], 1 on [2 eps/3, inf).
double cutoff(double r, double eps);
double cutoff_derivative(double r, double eps);
// sup |cutoff'| * eps.
inline constexpr double kCutoffSlope = 4.5;

// Planar cross-section of the family A^p_eps in the (x1, x2) half-plane coordinates
// (rho, r): the shell 1 <= |x| <= a, a = 1 + eps^n, for |x2| <= 1/2, closed off beyond
// |x2| = 1/2 by the tangent lines s |x1| + |x2| / 2 = a^2, s = sqrt(a^2 - 1/4), whose
// crossing at the apexes (0, +-2 a^2) is rounded by an arc of radius `apex_radius`.
struct AepsShape
{
  double eps = 0.0;
  int n = 2;
  double a = 1.0;
  double s = 0.0;
  double apex_radius = 0.0;
  double apex_center = 0.0;  // arc center (0, +-apex_center)

  // 0: outside, 1: region I (thin shell), 2: region II.
  int region(const Point &x) const;
  bool contains(const Point &x) const { return region(x) != 0; }
};

AepsShape aeps_shape(int n, double eps, double apex_radius = -1.0);

// Full planar boundary: outer convex loop (tag 0) and the unit circle (tag 1).
BoundaryDescription aeps_boundary(int n, double eps, double apex_radius = -1.0);

// Limit domain A_0 with region II truncated at |x2| = 1/2 + cut (the exact limit has cusps).
// Two components.
BoundaryDescription aeps_limit_boundary(double cut);

// Refinement toward the thin shell and the support of the cutoff gradient.
SizeField aeps_size_field(const FamilySpec &spec, double h);

// n = 2: planar mesh; n = 3: surface of revolution (p = 1 about the x1-axis, p = 0 about the
// x3-axis).
SimplicialMesh aeps_mesh(const FamilySpec &spec, double h);

// Convex polygon hull of the outer loop plus the unit hole, for measures and power diagrams.
DomainSpec aeps_domain(const FamilySpec &spec, int arc_samples = 48);

// Solid-angle form of S^p on R^{n-p-1} x (R^{p+1} \ 0), y = last p + 1 coordinates.
AnalyticForm harmonic_form(int n, int p);
// cutoff(|y|) * harmonic_form.
AnalyticForm test_form(int n, int p, double eps);

// Two unit balls centered at (+-1.5, 0) joined by a neck |y| <= eps of length 1 with filleted
// corners (fillet radius eps / 2).
struct DumbbellDomain
{
  int n = 2;
  double eps = 0.0;
  double fillet = 0.0;
  BoundaryDescription boundary;  // n = 2: full loop; n = 3: half-plane profile
  bool contains(const Point &x) const;
  // Cover sets: ball plus the whole neck, overlapping on the neck.
  static bool in_u1(const Point &x) { return x(0) <= 0.5; }
  static bool in_u2(const Point &x) { return x(0) >= -0.5; }
  double volume() const;
  double neck_volume() const;
};

DumbbellDomain dumbbell(int n, double eps);
SizeField dumbbell_size_field(double eps, double h);
SimplicialMesh dumbbell_mesh(const DumbbellDomain &d, double h, int sectors = 32);

// A^{p-1}_eps (planar, p = 1) with holes - 1 extra holes of radius r on the x2-axis inside
// region II, alternating above and below the unit hole.
struct MultiHoleDomain
{
  FamilySpec family;
  BoundaryDescription boundary;
  DomainSpec spec;
};

MultiHoleDomain multi_hole_family(int n, int p, int holes, double eps, double r);
SimplicialMesh multi_hole_mesh(const MultiHoleDomain &d, double h);

// Mesh for any family, dispatching on the id.
SimplicialMesh family_mesh(const FamilySpec &spec, double h);
// Exact or polygonal DomainSpec where one exists (not for the dumbbell).
std::optional<DomainSpec> family_domain(const FamilySpec &spec);

}  // namespace hodge

#endif  // HODGE_FAMILIES_HPP
