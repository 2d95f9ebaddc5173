// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_MESH_HPP
#define HODGE_MESH_HPP

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "hodge/error.hpp"

namespace hodge
{

// Points are stored in 3D; planar meshes keep z = 0.
using Point = Eigen::Vector3d;

// Vertex tuple of a simplex of dimension p uses the first p + 1 slots, the rest are -1.
using Simplex = std::array<int, 4>;

struct SimplexHash
{
  std::size_t operator()(const Simplex &s) const
  {
    std::size_t h = 1469598103934665603ull;
    for (int v : s)
    {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

Simplex make_simplex(std::initializer_list<int> verts);
Simplex sorted(Simplex s, int p);

// Facet tags.
inline constexpr int kInterior = -1;
inline constexpr int kCut = -2;
inline constexpr int kOuter = 0;
// Hole i (zero based) is tagged i + 1.

class SimplicialMesh
{
public:
  SimplicialMesh() = default;

  // Build the full complex from top-dimensional cells. Cells with negative orientation are
  // flipped. Boundary facets found in `tags` get that tag, the rest get `default_tag`.
  static SimplicialMesh from_cells(int dim, std::vector<Point> vertices,
                                   std::vector<Simplex> cells,
                                   const std::unordered_map<Simplex, int, SimplexHash> &tags = {},
                                   int default_tag = kOuter);

  int dim() const { return dim_; }
  int count(int p) const { return static_cast<int>(simplices_[p].size()); }
  const std::vector<Point> &vertices() const { return vertices_; }
  const Point &vertex(int i) const { return vertices_[i]; }

  // Sorted vertex tuples, lexicographically ordered, for p = 0..dim.
  const std::vector<Simplex> &simplices(int p) const { return simplices_[p]; }
  // Top cells with positive orientation; cells()[i] and simplices(dim)[i] hold the same set.
  const std::vector<Simplex> &cells() const { return cells_; }
  // faces(p)[k][i] = index of the (p-1)-face obtained by dropping vertex i of simplex k.
  const std::vector<Simplex> &faces(int p) const { return faces_[p]; }
  // For (dim-1)-simplices: kInterior, kOuter, hole tag, or kCut.
  const std::vector<int> &boundary_tags() const { return tags_; }
  // Cells incident to each facet (second entry -1 on the boundary).
  const std::vector<std::array<int, 2>> &facet_cells() const { return facet_cells_; }

  int find(int p, const Simplex &sorted_simplex) const;
  void set_boundary_tag(int facet, int tag);

  double h() const { return h_; }
  double cell_volume(int c) const;
  Point barycenter(int p, int k) const;
  double volume() const;
  int euler_characteristic() const;

private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Simplex> cells_;
  std::array<std::vector<Simplex>, 4> simplices_;
  std::array<std::vector<Simplex>, 4> faces_;
  std::array<std::unordered_map<Simplex, int, SimplexHash>, 4> index_;
  std::vector<int> tags_;
  std::vector<std::array<int, 2>> facet_cells_;
  double h_ = 0.0;
};

// Signed volume of an oriented simplex (dim 1..3) embedded in R^dim.
double signed_volume(int dim, const std::vector<Point> &verts, const Simplex &s);

struct Submesh
{
  SimplicialMesh mesh;
  // parent[p][k] = parent index of the child p-simplex k.
  std::array<std::vector<int>, 4> parent;
};

Submesh submesh(const SimplicialMesh &mesh, const std::vector<char> &cell_mask);
Submesh submesh(const SimplicialMesh &mesh, const std::function<bool(const Point &)> &keep);

// Text format: `dim n`, `vertices N` + coordinates, `cells M` + vertex indices,
// `boundary B` + facet index and tag.
void export_mesh(const SimplicialMesh &mesh, const std::string &path);
SimplicialMesh import_mesh(const std::string &path);
SimplicialMesh parse_mesh(const std::string &text);
std::string format_mesh(const SimplicialMesh &mesh);
void export_off(const SimplicialMesh &mesh, const std::string &path);

// Combinatorial and geometric checks shared by generators and the importer.
void validate(const SimplicialMesh &mesh);

}  // namespace hodge

#endif  // HODGE_MESH_HPP
