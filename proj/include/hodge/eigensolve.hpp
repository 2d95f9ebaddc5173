// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_EIGENSOLVE_HPP
#define HODGE_EIGENSOLVE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hodge/dec.hpp"

namespace hodge
{

struct SolverOptions
{
  double tol = 1e-8;
  int max_iterations = 2000;
  // Extra block vectors beyond the wanted ones; negative selects max(4, k).
  int extra = -1;
  std::uint64_t seed = 1;
  // Shift factor: sigma = shift * trace(K) / trace(M).
  double shift = 1e-3;
};

struct SpectrumResult
{
  std::vector<double> eigenvalues;  // ascending, positive
  std::vector<Vector> eigenvectors; // M-orthonormal
  std::vector<double> residuals;    // ||K x - lambda M x||_{M^-1}
  int kernel_dim = 0;               // n_p - rank D_p
  int harmonic_dim = 0;             // b_p
  std::vector<Vector> harmonic;     // M-orthonormal basis of the discrete harmonic space
  double tolerance = 0.0;           // max residual / lambda over reported pairs
  int iterations = 0;
};

// k smallest positive eigenvalues of the pencil. The kernel ker D_p is deflated explicitly:
// iterates stay M-orthogonal to range D_{p-1}, and the b_p harmonic directions are computed
// alongside and removed from the reported list.
SpectrumResult smallest_positive(const SpectralPencil &pencil, int k,
                                 const SolverOptions &opt = {});

// M-orthonormal basis of the harmonic p-cochains (dimension b_p).
std::vector<Vector> harmonic_basis(const SpectralPencil &pencil, const SolverOptions &opt = {});

// Projection onto the M-orthogonal complement of range D_{p-1}.
class GradientProjector
{
public:
  GradientProjector(const SimplicialMesh &mesh, int p, const SparseMatrix &M);
  void apply(Vector &v) const;
  int rank() const { return static_cast<int>(G_.cols()); }
  const SparseMatrix &basis() const { return G_; }

private:
  struct Impl;
  SparseMatrix G_;
  SparseMatrix MG_;
  std::shared_ptr<Impl> impl_;
};

struct EnvelopeResult
{
  double value = 0.0;  // h^2 extrapolation from the two finest levels
  double error = 0.0;  // distance to the extrapolation from the next pair of levels
};

// Refinement ladder (h strictly decreasing, eigenvalues non-increasing).
EnvelopeResult eigen_lower_envelope(const std::vector<double> &h,
                                    const std::vector<double> &eigenvalues);

std::string spectrum_csv(const SpectrumResult &r);
void write_spectrum_csv(const SpectrumResult &r, const std::string &path);

}  // namespace hodge

#endif  // HODGE_EIGENSOLVE_HPP
