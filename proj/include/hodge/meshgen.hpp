// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_MESHGEN_HPP
#define HODGE_MESHGEN_HPP

#include <cstdint>
#include <functional>

#include "hodge/curve.hpp"
#include "hodge/geometry.hpp"
#include "hodge/mesh.hpp"

namespace hodge
{

using SizeField = std::function<double(const Point &)>;

struct Mesh2dOptions
{
  double h = 0.1;
  SizeField size;  // optional local size, combined with h by min
  double min_angle_deg = 21.0;
  int max_vertices = 4000000;
  std::uint64_t seed = 1;
};

// Quality conforming Delaunay triangulation of the region bounded by the loops.
SimplicialMesh mesh2d(const BoundaryDescription &boundary, const Mesh2dOptions &opt);
SimplicialMesh mesh2d(const BoundaryDescription &boundary, double h);

BoundaryDescription boundary_of(const DomainSpec &spec);

// Structured triangulation of [lo, hi] with nx * ny squares, each cut along a diagonal.
SimplicialMesh structured_rectangle(const Point &lo, const Point &hi, int nx, int ny);

// Radial-layer tetrahedral mesh between the sphere |x - center| = Rh and the outer body
// (a concentric ball or a box containing the sphere).
SimplicialMesh mesh3d_shell(const Point &center, double Rh, const OuterBody &outer, double h);

// Revolve a planar profile mesh in the (x1, r) half plane, r >= 0, about the x1-axis.
// Profile vertices with r = 0 collapse onto the axis.
SimplicialMesh revolve(const SimplicialMesh &profile, int sectors);

// 2D meshes use mesh2d; 3D single-hole ball-in-ball or ball-in-box domains use mesh3d_shell.
SimplicialMesh mesh_domain(const DomainSpec &spec, double h);

}  // namespace hodge

#endif  // HODGE_MESHGEN_HPP
