// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_GEOMETRY_HPP
#define HODGE_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodge/mesh.hpp"

namespace hodge
{

struct Hole
{
  Point center = Point::Zero();
  double radius = 0.0;
};

struct OuterBody
{
  enum class Kind
  {
    Ball,
    Polytope
  };
  Kind kind = Kind::Ball;
  Point center = Point::Zero();
  double radius = 0.0;
  std::vector<Point> vertices;  // polytope only, convex position
};

// Convex outer body minus pairwise disjoint closed balls.
struct DomainSpec
{
  int n = 2;
  OuterBody outer;
  std::vector<Hole> holes;

  static DomainSpec ball(int n, const Point &center, double radius);
  static DomainSpec box(int n, const Point &lo, const Point &hi);
  DomainSpec &add_hole(const Point &center, double radius);
};

// Halfspace {x : normal . x <= offset}.
struct Halfspace
{
  Point normal = Point::Zero();
  double offset = 0.0;
};

struct ConvexPolytope
{
  int dim = 2;
  std::vector<Halfspace> halfspaces;
  std::vector<Point> vertices;
  // Facets as vertex index cycles (2D: the polygon edges, 3D: ordered facet polygons).
  std::vector<std::vector<int>> facets;
  double volume = 0.0;
  bool empty() const { return vertices.empty() || volume <= 0.0; }
};

// Intersection of halfspaces, bounded by the caller.
ConvexPolytope clip_halfspaces(int dim, const std::vector<Halfspace> &hs);
bool point_in(const std::vector<Halfspace> &hs, const Point &x, double tol = 0.0);
void export_off(const ConvexPolytope &poly, const std::string &path);

// Facet halfspaces of the outer body (polytope) or of an inscribed-safe polyhedral
// approximation (ball) with `ball_facets` sides in 2D.
std::vector<Halfspace> outer_halfspaces(const DomainSpec &spec, int ball_facets = 256);

// Throws InvalidDomain on overlapping, touching, or escaping holes, or a non-convex outer.
void validate(const DomainSpec &spec);
bool inside(const DomainSpec &spec, const Point &x);
double domain_volume(const DomainSpec &spec);

struct GeometricMeasures
{
  double D = 0.0;       // diameter of the outer body
  double Rc = 0.0;      // contact radius (hole to outer boundary) for one hole
  double r_c = 0.0;     // min hole-to-outer-boundary clearance
  double d_h = 0.0;     // min hole-pair surface distance (infinite for one hole)
  double Rc_hat = 0.0;  // min{r_c, d_h / 2}
  double Rh_min = 0.0;
  double Rh_max = 0.0;
  double RP = 0.0;      // partition parameter
};

GeometricMeasures measure(const DomainSpec &spec);

DomainSpec transform(const DomainSpec &spec, double s, const Point &t = Point::Zero());

struct PowerCell
{
  int hole = -1;
  // Walls against the other holes: 2(c_j - c_i) . x <= |c_j|^2 - |c_i|^2 - r_j^2 + r_i^2.
  std::vector<Halfspace> walls;
  std::vector<int> wall_hole;
  // Cell clipped by the outer body (ball outers are clipped by their bounding box and the
  // exact volume is computed separately).
  ConvexPolytope polytope;
  double volume = 0.0;  // volume of (cell ∩ outer) minus the hole
  double contact_radius = 0.0;
  bool empty = false;
};

struct PowerPartition
{
  DomainSpec domain;
  std::vector<PowerCell> cells;
  std::vector<std::pair<int, int>> adjacency;
  // intersection_counts[m] = number of nonempty (m+1)-fold intersections of fattened cells.
  std::vector<int> intersection_counts;
  double margin = 0.0;
  std::vector<int> empty_cells;
};

PowerPartition power_diagram(const DomainSpec &spec, double margin_factor = 0.25);

// Membership of a point in the closed power cell i (no outer clipping), optionally fattened.
bool in_power_cell(const PowerPartition &part, int i, const Point &x, double fatten = 0.0);

struct HypothesisResult
{
  bool ok = false;
  std::vector<int> order;           // accepted order, or deepest partial order reached
  int failing_prefix_length = 0;    // 0 when ok
};

struct HypothesisOptions
{
  int exhaustive_limit = 8;
  int samples_3d = 100000;
  double tolerance_3d = 1e-3;
  std::uint64_t seed = 7;
};

HypothesisResult hypothesis_order(const PowerPartition &part, const HypothesisOptions &opt = {});

// Convexity of the union of the power cells listed (each clipped by the outer body).
bool prefix_convex(const PowerPartition &part, const std::vector<int> &cells,
                   const HypothesisOptions &opt = {});

// Area of the intersection of a disk and a convex polygon (counterclockwise vertices).
double disk_polygon_area(const Point &center, double radius, const std::vector<Point> &polygon);

}  // namespace hodge

#endif  // HODGE_GEOMETRY_HPP
