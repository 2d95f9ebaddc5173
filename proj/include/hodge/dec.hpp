// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_DEC_HPP
#define HODGE_DEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hodge/form.hpp"
#include "hodge/mesh.hpp"

namespace hodge
{

using SparseMatrix = Eigen::SparseMatrix<double>;
using IntSparseMatrix = Eigen::SparseMatrix<int>;
using Vector = Eigen::VectorXd;

struct Cochain
{
  int degree = 0;
  Vector values;
};

// Generalized eigenproblem K x = lambda M x on p-cochains. `mesh` is non-owning.
struct SpectralPencil
{
  SparseMatrix K;
  SparseMatrix M;
  int degree = 0;
  const SimplicialMesh *mesh = nullptr;
};

// Signed incidence D_p : C^p -> C^{p+1}; p = n gives the zero map.
IntSparseMatrix coboundary_int(const SimplicialMesh &mesh, int p);
SparseMatrix coboundary(const SimplicialMesh &mesh, int p);
// D_{p+1} D_p == 0 in integer arithmetic.
bool coboundary_squares_to_zero(const SimplicialMesh &mesh, int p);

// Lowest-order Whitney mass matrix, exact per-element integrals.
SparseMatrix mass_matrix(const SimplicialMesh &mesh, int p);

SpectralPencil up_pencil(const SimplicialMesh &mesh, int p);

double rayleigh(const SpectralPencil &pencil, const Vector &theta);

// Exact rank of D_p with a set of linearly independent columns (p-simplices).
struct RankInfo
{
  int rank = 0;
  std::vector<int> independent_columns;
};
RankInfo coboundary_rank(const SimplicialMesh &mesh, int p, std::uint32_t prime = 2147483647u);

int betti(const SimplicialMesh &mesh, int p);
std::vector<int> betti_numbers(const SimplicialMesh &mesh);

// Connected component label of every vertex.
std::vector<int> vertex_components(const SimplicialMesh &mesh, int *count = nullptr);

// Integrals of the form over every p-simplex (degree-4 quadrature). Simplices touching a
// singular point get value 0 and are listed in `flagged`.
Cochain de_rham_sample(const SimplicialMesh &mesh, const AnalyticForm &form,
                       std::vector<int> *flagged = nullptr);

// Coordinate text format: header `rows cols nnz`, then `row col value` per entry.
void export_coo(const SparseMatrix &A, const std::string &path);

}  // namespace hodge

#endif  // HODGE_DEC_HPP
