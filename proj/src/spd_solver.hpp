// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_SPD_SOLVER_HPP
#define HODGE_SPD_SOLVER_HPP

#include <memory>

#include <Eigen/CholmodSupport>
#include <Eigen/Dense>

#include "hodge/dec.hpp"

namespace hodge
{

// Sparse Cholesky of a symmetric positive definite matrix (CHOLMOD, simplicial).
class SpdSolver
{
public:
  SpdSolver() = default;
  explicit SpdSolver(const SparseMatrix &A, const char *what = "matrix")
    : llt_(std::make_unique<Eigen::CholmodSimplicialLLT<SparseMatrix>>())
  {
    llt_->compute(A);
    HODGE_REQUIRE(llt_->info() == Eigen::Success, ErrorCode::NotConverged,
                  std::string("Cholesky factorization failed: ") + what);
  }
  template <typename Rhs>
  Eigen::MatrixXd solve(const Rhs &b) const
  {
    return llt_->solve(Eigen::MatrixXd(b));
  }
  Vector solve_vec(const Vector &b) const { return llt_->solve(b); }

private:
  std::unique_ptr<Eigen::CholmodSimplicialLLT<SparseMatrix>> llt_;
};

}  // namespace hodge

#endif  // HODGE_SPD_SOLVER_HPP
