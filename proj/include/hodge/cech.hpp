// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_CECH_HPP
#define HODGE_CECH_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodge/bounds.hpp"
#include "hodge/dec.hpp"
#include "hodge/eigensolve.hpp"
#include "hodge/geometry.hpp"

namespace hodge
{

using MultiIndex = std::vector<int>;  // strictly increasing element indices

// Open cover of a mesh by sets of top cells. Intersections U_I are cells common to all
// elements in I; only nonempty ones with |I| <= max_order are kept.
struct Cover
{
  const SimplicialMesh *mesh = nullptr;
  std::vector<std::vector<char>> cells;  // per element
  std::map<MultiIndex, std::vector<char>> intersections;  // |I| >= 1
  int max_order = 0;
  double margin = 0.0;  // suggested partition-of-unity ramp width

  int size() const { return static_cast<int>(cells.size()); }
  // Nonempty multi-indices with |I| = m.
  std::vector<MultiIndex> of_order(int m) const;
  // Parent p-simplices lying in U_I (faces of its cells).
  const std::vector<char> &simplex_mask(const MultiIndex &I, int p) const;
  Submesh piece(const MultiIndex &I) const;
  double volume(const MultiIndex &I) const;
  double diameter(const MultiIndex &I) const;

  mutable std::map<std::pair<MultiIndex, int>, std::vector<char>> mask_cache;
};

// Elements given by barycenter predicates; intersections up to |I| = max_order.
Cover predicate_cover(const SimplicialMesh &mesh,
                      const std::vector<std::function<bool(const Point &)>> &elements,
                      int max_order, double margin);
Cover single_element_cover(const SimplicialMesh &mesh, int max_order = 1);
// Fattened power cells; element i is the cell of hole i grown by `fatten`.
Cover power_cover(const SimplicialMesh &mesh, const PowerPartition &part, double fatten,
                  int max_order);

struct SphereCoverOptions
{
  double r0_coeff = 0.25;  // r0 = r0_coeff * Rc
  int level = 1;           // element radius 4^level r0 / 4^n
  // Center separation r0 / separation_divisor; 0 selects 4^n.
  double separation_divisor = 0.0;
  int max_order = 2;
};

struct SphereCoverInfo
{
  double r0 = 0.0;
  double separation = 0.0;
  double radius = 0.0;
  std::vector<Point> centers;
  double packing_constant = 0.0;  // N / (Rh / r0)^{n-1}
};

// Caps around centers on the hole sphere, pulled back by radial projection.
Cover sphere_cover(const SimplicialMesh &mesh, const DomainSpec &annulus,
                   const SphereCoverOptions &opt = {}, SphereCoverInfo *info = nullptr);

struct PartitionOfUnity
{
  std::vector<Vector> rho;  // vertex weights per element
  double c_rho = 0.0;       // max over elements and cells of |grad rho_i|^2
  double margin = 0.0;
};

// Distance ramps of width `margin` (graph distance to the element's inner boundary),
// normalized to sum to one. margin <= 0 uses cover.margin.
PartitionOfUnity partition_of_unity(const Cover &cover, double margin = 0.0);

struct LocalPrimitive
{
  Vector theta;
  double ratio = 0.0;     // ||theta||_M / ||omega||_M
  double residual = 0.0;  // ||D theta - omega||_M / ||omega||_M
};

// Least M-norm theta with D_{p-1} theta = omega on the mesh (omega a p-cochain).
LocalPrimitive local_primitive(const SimplicialMesh &mesh, const Vector &omega, int p,
                               double tol = 1e-8);

// Factorized least-norm solver for D_r theta = beta on one mesh, many right-hand sides.
class LocalSolver
{
public:
  LocalSolver(const SimplicialMesh &mesh, int r);
  // Columns of beta are (r+1)-cochains; returns r-cochains.
  Eigen::MatrixXd solve(const Eigen::MatrixXd &beta) const;
  const SparseMatrix &mass() const;
  const SparseMatrix &mass_next() const;
  const SparseMatrix &coboundary() const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Cech cochains with values in r-cochains: a parent-length block per multi-index (columns
// are independent right-hand sides), zero outside U_I.
struct CechCochain
{
  int order = 0;   // |I| - 1
  int degree = 0;  // r
  std::map<MultiIndex, Eigen::MatrixXd> values;
};

// (delta a)_{i0..iq+1} = sum_k (-1)^k a_{..^ik..} restricted to U_I.
CechCochain cech_delta(const Cover &cover, const CechCochain &a);
// D applied on every U_I.
CechCochain cech_d(const Cover &cover, const CechCochain &a);
// (K a)_I = sum_j rho_j cup a_{jI}; order must be >= 1.
CechCochain cech_homotopy(const Cover &cover, const PartitionOfUnity &pou, const CechCochain &a);
// Random Cech cochain supported on the cover's intersections.
CechCochain random_cech(const Cover &cover, int order, int degree, std::uint64_t seed);
double cech_norm(const CechCochain &a);

struct CechPrimitiveResult
{
  Vector eta;
  double residual = 0.0;  // ||D eta - omega||_M / ||omega||_M
  double ratio = 0.0;     // ||eta||_M / ||omega||_M
  double cocycle_residual = 0.0;  // top Cech coboundary solve residual
  std::vector<double> constants;  // c_H on the top intersections
};

// Global primitive of the exact p-cochain omega through the cover.
CechPrimitiveResult cech_primitive(const SimplicialMesh &mesh, const Cover &cover,
                                   const PartitionOfUnity &pou, const Vector &omega, int p,
                                   double tol = 1e-8);

struct GluedResult
{
  Vector phi;      // exact p-cochain in the span of the first 1 + k_p exact eigenforms
  Vector psi_bar;  // D psi_bar = phi
  double quotient = 0.0;  // ||phi||^2 / ||psi_bar||^2
  double residual = 0.0;
  double constraint_residual = 0.0;
  int k_p = 0;
  std::vector<double> eigenvalues;  // lambda''_{p, 1..1+k_p}
};

// Glues local least-norm primitives of phi, with phi chosen so the top Cech obstruction
// vanishes.
GluedResult glued_primitive(const SimplicialMesh &mesh, const Cover &cover,
                            const PartitionOfUnity &pou, int p, const SolverOptions &opt = {});

// Cohomology hypotheses for the p-gluing: H^{p-q}(U_I) = 0 for |I| = q + 1, q = 1..p-1, and
// connected (p+1)-fold intersections. Returns an empty string when satisfied.
std::string check_gluing_hypotheses(const Cover &cover, int p);

// First exact eigenvalues of the cover pieces and intersections for the gluing bounds.
McGowanInput mcgowan_input(const Cover &cover, const PartitionOfUnity &pou, int p,
                           const SolverOptions &opt = {});
// First exact p-eigenvalue (smallest positive eigenvalue of the (p-1) up-pencil).
double first_exact_eigenvalue(const SimplicialMesh &mesh, int p, const SolverOptions &opt = {});

std::string cover_csv(const Cover &cover);
std::string partition_csv(const Cover &cover, const PartitionOfUnity &pou);

}  // namespace hodge

#endif  // HODGE_CECH_HPP
