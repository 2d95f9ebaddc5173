// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "spd_solver.hpp"

namespace hodge
{

struct GradientProjector::Impl
{
  SpdSolver gram;
};

GradientProjector::GradientProjector(const SimplicialMesh &mesh, int p, const SparseMatrix &M)
  : impl_(std::make_shared<Impl>())
{
  if (p == 0)
  {
    G_.resize(M.rows(), 0);
    return;
  }
  const RankInfo info = coboundary_rank(mesh, p - 1);
  const SparseMatrix D = coboundary(mesh, p - 1);
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < info.rank; c++)
  {
    for (SparseMatrix::InnerIterator it(D, info.independent_columns[c]); it; ++it)
    {
      trip.emplace_back(it.row(), c, it.value());
    }
  }
  G_.resize(D.rows(), info.rank);
  G_.setFromTriplets(trip.begin(), trip.end());
  MG_ = M * G_;
  if (info.rank > 0)
  {
    const SparseMatrix gram = SparseMatrix(G_.transpose()) * MG_;
    impl_->gram = SpdSolver(gram, "gradient Gram matrix");
  }
}

void GradientProjector::apply(Vector &v) const
{
  if (G_.cols() == 0)
  {
    return;
  }
  const Vector y = impl_->gram.solve_vec(MG_.transpose() * v);
  v -= G_ * y;
}

namespace
{

double trace(const SparseMatrix &A)
{
  double t = 0.0;
  for (int k = 0; k < A.outerSize(); k++)
  {
    t += A.coeff(k, k);
  }
  return t;
}

// Component indicators, M-normalized.
std::vector<Vector> constant_basis(const SimplicialMesh &mesh, const SparseMatrix &M)
{
  int nc = 0;
  const auto label = vertex_components(mesh, &nc);
  std::vector<Vector> out(nc, Vector::Zero(mesh.count(0)));
  for (int v = 0; v < mesh.count(0); v++)
  {
    out[label[v]](v) = 1.0;
  }
  for (auto &u : out)
  {
    u /= std::sqrt(u.dot(M * u));
  }
  return out;
}

class Deflation
{
public:
  Deflation(const GradientProjector &proj, const std::vector<Vector> &fixed, const SparseMatrix &M)
    : proj_(proj), fixed_(fixed), M_(M)
  {
    for (const auto &f : fixed_)
    {
      Mfixed_.push_back(M_ * f);
    }
  }
  void apply(Eigen::MatrixXd &X) const
  {
    for (int c = 0; c < X.cols(); c++)
    {
      Vector v = X.col(c);
      proj_.apply(v);
      for (std::size_t i = 0; i < fixed_.size(); i++)
      {
        v -= Mfixed_[i].dot(v) * fixed_[i];
      }
      X.col(c) = v;
    }
  }

private:
  const GradientProjector &proj_;
  const std::vector<Vector> &fixed_;
  const SparseMatrix &M_;
  std::vector<Vector> Mfixed_;
};

// Replaces X by an M-orthonormal basis of its span (Cholesky QR, twice).
void m_orthonormalize(Eigen::MatrixXd &X, const SparseMatrix &M)
{
  for (int pass = 0; pass < 2; pass++)
  {
    Eigen::MatrixXd G = X.transpose() * (M * X);
    G = 0.5 * (G + G.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    HODGE_REQUIRE(llt.info() == Eigen::Success, ErrorCode::NotConverged,
                  "iteration block lost rank");
    X = llt.matrixU().solve<Eigen::OnTheRight>(X);
  }
}

struct BlockResult
{
  std::vector<double> theta;
  Eigen::MatrixXd X;
  std::vector<double> residual;
  int iterations = 0;
  int b = 0;
  std::vector<Vector> fixed;
};

BlockResult block_solve(const SpectralPencil &pencil, int k, const SolverOptions &opt)
{
  HODGE_REQUIRE(pencil.mesh != nullptr, ErrorCode::InvalidArgument,
                "pencil has no mesh; deflation needs the complex");
  HODGE_REQUIRE(opt.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const SimplicialMesh &mesh = *pencil.mesh;
  const int p = pencil.degree;
  const int n = static_cast<int>(pencil.K.rows());
  HODGE_REQUIRE(n == mesh.count(p) && pencil.M.rows() == n, ErrorCode::InvalidArgument,
                "pencil size does not match the mesh");

  BlockResult out;
  const GradientProjector proj(mesh, p, pencil.M);
  int b = betti(mesh, p);
  int hidden = 0;  // harmonic directions deflated exactly
  if (p == 0)
  {
    out.fixed = constant_basis(mesh, pencil.M);
    hidden = b;
  }
  const int available = n - proj.rank() - hidden;
  const int in_block = (p == 0) ? 0 : b;
  const int wanted = in_block + k;
  HODGE_REQUIRE(wanted <= available, ErrorCode::InvalidArgument,
                fmt::format("requested {} eigenpairs but only {} are available", k,
                            available - in_block));
  const int extra = opt.extra >= 0 ? opt.extra : std::max(4, k);
  const int m = std::min(available, wanted + extra);
  out.b = in_block;
  if (m == 0)
  {
    return out;
  }

  const double scale = trace(pencil.K) / trace(pencil.M);
  const double sigma = opt.shift * scale;
  const SparseMatrix A = pencil.K + sigma * pencil.M;
  const SpdSolver solver(A, "shifted pencil");
  const SpdSolver mass(pencil.M, "mass matrix");

  const Deflation defl(proj, out.fixed, pencil.M);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd X(n, m);
  for (int j = 0; j < m; j++)
  {
    for (int i = 0; i < n; i++)
    {
      X(i, j) = gauss(rng);
    }
  }
  defl.apply(X);
  m_orthonormalize(X, pencil.M);

  double worst = 0.0;
  for (int it = 1; it <= opt.max_iterations; it++)
  {
    Eigen::MatrixXd Y = solver.solve(pencil.M * X);
    defl.apply(Y);
    m_orthonormalize(Y, pencil.M);
    Eigen::MatrixXd H = Y.transpose() * (pencil.K * Y);
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H);
    X = Y * ritz.eigenvectors();
    out.theta.assign(ritz.eigenvalues().data(), ritz.eigenvalues().data() + m);

    const Eigen::MatrixXd R = pencil.K * X - pencil.M * X * ritz.eigenvalues().asDiagonal();
    const Eigen::MatrixXd MinvR = mass.solve(R);
    out.residual.assign(m, 0.0);
    for (int j = 0; j < m; j++)
    {
      out.residual[j] = std::sqrt(std::max(0.0, R.col(j).dot(MinvR.col(j))));
    }
    const double ref = (in_block < m) ? out.theta[in_block] : scale;
    worst = 0.0;
    for (int j = 0; j < wanted; j++)
    {
      worst = std::max(worst, out.residual[j] / std::max(out.theta[j], ref));
    }
    out.iterations = it;
    if (worst <= opt.tol)
    {
      out.X = X;
      return out;
    }
  }
  throw Error(ErrorCode::NotConverged,
              fmt::format("block inverse iteration reached {} iterations with relative residual {}",
                          opt.max_iterations, worst));
}

}  // namespace

SpectrumResult smallest_positive(const SpectralPencil &pencil, int k, const SolverOptions &opt)
{
  HODGE_REQUIRE(k >= 1, ErrorCode::InvalidArgument, "k must be at least 1");
  const BlockResult br = block_solve(pencil, k, opt);
  const SimplicialMesh &mesh = *pencil.mesh;
  SpectrumResult res;
  res.iterations = br.iterations;
  res.kernel_dim = mesh.count(pencil.degree) - coboundary_rank(mesh, pencil.degree).rank;
  const double scale = trace(pencil.K) / trace(pencil.M);
  double floor = 0.0;
  for (int j = 0; j < br.b; j++)
  {
    floor = std::max(floor, std::abs(br.theta[j]));
    res.harmonic.push_back(br.X.col(j));
  }
  if (pencil.degree == 0)
  {
    res.harmonic = br.fixed;
  }
  res.harmonic_dim = static_cast<int>(res.harmonic.size());
  const double first = br.theta[br.b];
  if (first <= floor + 10.0 * opt.tol * scale || floor > 10.0 * opt.tol * scale)
  {
    throw Error(ErrorCode::AmbiguousKernel,
                fmt::format("cannot separate kernel from spectrum: harmonic floor {}, smallest "
                            "positive candidate {}, scale {}",
                            floor, first, scale));
  }
  for (int j = br.b; j < br.b + k; j++)
  {
    res.eigenvalues.push_back(br.theta[j]);
    res.eigenvectors.push_back(br.X.col(j));
    res.residuals.push_back(br.residual[j]);
    res.tolerance = std::max(res.tolerance, br.residual[j] / br.theta[j]);
  }
  return res;
}

std::vector<Vector> harmonic_basis(const SpectralPencil &pencil, const SolverOptions &opt)
{
  HODGE_REQUIRE(pencil.mesh != nullptr, ErrorCode::InvalidArgument, "pencil has no mesh");
  if (pencil.degree == 0)
  {
    return constant_basis(*pencil.mesh, pencil.M);
  }
  if (betti(*pencil.mesh, pencil.degree) == 0)
  {
    return {};
  }
  const BlockResult br = block_solve(pencil, 0, opt);
  std::vector<Vector> out;
  for (int j = 0; j < br.b; j++)
  {
    out.push_back(br.X.col(j));
  }
  return out;
}

EnvelopeResult eigen_lower_envelope(const std::vector<double> &h,
                                    const std::vector<double> &eigenvalues)
{
  HODGE_REQUIRE(h.size() == eigenvalues.size(), ErrorCode::InvalidArgument,
                "ladder sizes differ");
  HODGE_REQUIRE(h.size() >= 3, ErrorCode::InsufficientLevels,
                fmt::format("need at least 3 refinement levels, got {}", h.size()));
  for (std::size_t i = 1; i < h.size(); i++)
  {
    HODGE_REQUIRE(h[i] < h[i - 1], ErrorCode::InvalidArgument, "h ladder must decrease");
    HODGE_REQUIRE(eigenvalues[i] <= eigenvalues[i - 1] * (1.0 + 1e-12), ErrorCode::NonMonotone,
                  fmt::format("eigenvalue increases under refinement: {} -> {} at h = {}",
                              eigenvalues[i - 1], eigenvalues[i], h[i]));
  }
  auto extrapolate = [&](std::size_t c, std::size_t f) {
    const double hc = h[c] * h[c], hf = h[f] * h[f];
    return (eigenvalues[f] * hc - eigenvalues[c] * hf) / (hc - hf);
  };
  const std::size_t L = h.size();
  EnvelopeResult r;
  r.value = extrapolate(L - 2, L - 1);
  r.error = std::abs(r.value - extrapolate(L - 3, L - 2));
  return r;
}

std::string spectrum_csv(const SpectrumResult &r)
{
  std::string out = "index,value,residual\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); i++)
  {
    out += fmt::format("{},{:.17g},{:.17g}\n", i + 1, r.eigenvalues[i], r.residuals[i]);
  }
  return out;
}

void write_spectrum_csv(const SpectrumResult &r, const std::string &path)
{
  std::ofstream os(path);
  HODGE_REQUIRE(os, ErrorCode::Io, "cannot open " + path);
  os << spectrum_csv(r);
}

}  // namespace hodge
