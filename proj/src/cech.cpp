// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/cech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>

#include <Eigen/SVD>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "csv.hpp"

namespace hodge
{

namespace
{

std::vector<int> mask_list(const std::vector<char> &mask)
{
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(mask.size()); i++)
  {
    if (mask[i])
    {
      out.push_back(i);
    }
  }
  return out;
}

std::string index_name(const MultiIndex &I)
{
  std::string s;
  for (std::size_t k = 0; k < I.size(); k++)
  {
    s += (k ? " " : "") + std::to_string(I[k]);
  }
  return s;
}

MultiIndex drop(const MultiIndex &I, std::size_t k)
{
  MultiIndex J;
  for (std::size_t i = 0; i < I.size(); i++)
  {
    if (i != k)
    {
      J.push_back(I[i]);
    }
  }
  return J;
}

// Extends the element cell masks to all intersections up to max_order.
void build_intersections(Cover &cover)
{
  const int k0 = cover.size();
  std::map<MultiIndex, std::vector<int>> level;
  for (int i = 0; i < k0; i++)
  {
    auto cells = mask_list(cover.cells[i]);
    HODGE_REQUIRE(!cells.empty(), ErrorCode::EmptySelection,
                  fmt::format("cover element {} has no cell", i));
    cover.intersections[{i}] = cover.cells[i];
    level[{i}] = std::move(cells);
  }
  for (int m = 2; m <= cover.max_order; m++)
  {
    std::map<MultiIndex, std::vector<int>> next;
    for (const auto &[I, cells] : level)
    {
      for (int j = I.back() + 1; j < k0; j++)
      {
        std::vector<int> common;
        for (int c : cells)
        {
          if (cover.cells[j][c])
          {
            common.push_back(c);
          }
        }
        if (common.empty())
        {
          continue;
        }
        MultiIndex J = I;
        J.push_back(j);
        std::vector<char> mask(cover.cells[0].size(), 0);
        for (int c : common)
        {
          mask[c] = 1;
        }
        cover.intersections[J] = std::move(mask);
        next[J] = std::move(common);
      }
    }
    level = std::move(next);
  }
}

void check_covered(const Cover &cover)
{
  const int nc = cover.mesh->count(cover.mesh->dim());
  for (int c = 0; c < nc; c++)
  {
    bool any = false;
    for (const auto &e : cover.cells)
    {
      any = any || e[c];
    }
    HODGE_REQUIRE(any, ErrorCode::UncoveredSimplex, fmt::format("cell {} is in no element", c));
  }
}

Eigen::MatrixXd masked(Eigen::MatrixXd x, const std::vector<char> &mask)
{
  for (int k = 0; k < x.rows(); k++)
  {
    if (!mask[k])
    {
      x.row(k).setZero();
    }
  }
  return x;
}

// Alexander-Whitney cup with a 0-cochain: (rho cup x)(v0..vr) = rho(v0) x(v0..vr).
Eigen::MatrixXd cup0(const SimplicialMesh &mesh, int r, const Vector &rho, const Eigen::MatrixXd &x)
{
  Eigen::MatrixXd out(x.rows(), x.cols());
  const auto &simp = mesh.simplices(r);
  for (int k = 0; k < x.rows(); k++)
  {
    out.row(k) = rho(simp[k][0]) * x.row(k);
  }
  return out;
}

double m_norm(const SparseMatrix &M, const Vector &x)
{
  return std::sqrt(std::max(0.0, x.dot(M * x)));
}

Eigen::MatrixXd gather(const Eigen::MatrixXd &full, const std::vector<int> &parent)
{
  Eigen::MatrixXd out(parent.size(), full.cols());
  for (std::size_t k = 0; k < parent.size(); k++)
  {
    out.row(k) = full.row(parent[k]);
  }
  return out;
}

Eigen::MatrixXd scatter(const Eigen::MatrixXd &local, const std::vector<int> &parent, int n)
{
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, local.cols());
  for (std::size_t k = 0; k < parent.size(); k++)
  {
    out.row(parent[k]) = local.row(k);
  }
  return out;
}

}  // namespace

std::vector<MultiIndex> Cover::of_order(int m) const
{
  std::vector<MultiIndex> out;
  for (const auto &[I, mask] : intersections)
  {
    if (static_cast<int>(I.size()) == m)
    {
      out.push_back(I);
    }
  }
  return out;
}

const std::vector<char> &Cover::simplex_mask(const MultiIndex &I, int p) const
{
  const auto key = std::make_pair(I, p);
  auto it = mask_cache.find(key);
  if (it != mask_cache.end())
  {
    return it->second;
  }
  auto found = intersections.find(I);
  HODGE_REQUIRE(found != intersections.end(), ErrorCode::InvalidArgument,
                fmt::format("no intersection {}", index_name(I)));
  const int n = mesh->dim();
  std::vector<char> cur = found->second;
  for (int d = n; d > p; d--)
  {
    std::vector<char> lower(mesh->count(d - 1), 0);
    for (int k = 0; k < mesh->count(d); k++)
    {
      if (cur[k])
      {
        for (int i = 0; i <= d; i++)
        {
          lower[mesh->faces(d)[k][i]] = 1;
        }
      }
    }
    cur = std::move(lower);
  }
  return mask_cache.emplace(key, std::move(cur)).first->second;
}

Submesh Cover::piece(const MultiIndex &I) const
{
  auto found = intersections.find(I);
  HODGE_REQUIRE(found != intersections.end(), ErrorCode::EmptySelection,
                fmt::format("intersection {} is empty", index_name(I)));
  return submesh(*mesh, found->second);
}

double Cover::volume(const MultiIndex &I) const
{
  auto found = intersections.find(I);
  if (found == intersections.end())
  {
    return 0.0;
  }
  double v = 0.0;
  for (int c = 0; c < static_cast<int>(found->second.size()); c++)
  {
    if (found->second[c])
    {
      v += mesh->cell_volume(c);
    }
  }
  return v;
}

double Cover::diameter(const MultiIndex &I) const
{
  const auto verts = mask_list(simplex_mask(I, 0));
  double d = 0.0;
  for (std::size_t a = 0; a < verts.size(); a++)
  {
    for (std::size_t b = a + 1; b < verts.size(); b++)
    {
      d = std::max(d, (mesh->vertex(verts[a]) - mesh->vertex(verts[b])).norm());
    }
  }
  return d;
}

Cover predicate_cover(const SimplicialMesh &mesh,
                      const std::vector<std::function<bool(const Point &)>> &elements,
                      int max_order, double margin)
{
  HODGE_REQUIRE(!elements.empty(), ErrorCode::InvalidArgument, "cover needs an element");
  HODGE_REQUIRE(max_order >= 1, ErrorCode::InvalidArgument, "max_order must be positive");
  Cover cover;
  cover.mesh = &mesh;
  cover.max_order = max_order;
  cover.margin = margin;
  const int n = mesh.dim();
  for (const auto &keep : elements)
  {
    std::vector<char> mask(mesh.count(n), 0);
    for (int c = 0; c < mesh.count(n); c++)
    {
      mask[c] = keep(mesh.barycenter(n, c)) ? 1 : 0;
    }
    cover.cells.push_back(std::move(mask));
  }
  check_covered(cover);
  build_intersections(cover);
  return cover;
}

Cover single_element_cover(const SimplicialMesh &mesh, int max_order)
{
  return predicate_cover(mesh, {[](const Point &) { return true; }}, max_order,
                         std::max(mesh.h(), 1e-12));
}

Cover power_cover(const SimplicialMesh &mesh, const PowerPartition &part, double fatten,
                  int max_order)
{
  std::vector<std::function<bool(const Point &)>> elements;
  for (int i = 0; i < static_cast<int>(part.cells.size()); i++)
  {
    if (part.cells[i].empty)
    {
      continue;
    }
    elements.push_back([&part, i, fatten](const Point &x) { return in_power_cell(part, i, x, fatten); });
  }
  return predicate_cover(mesh, elements, max_order, fatten);
}

Cover sphere_cover(const SimplicialMesh &mesh, const DomainSpec &annulus,
                   const SphereCoverOptions &opt, SphereCoverInfo *info)
{
  HODGE_REQUIRE(annulus.holes.size() == 1, ErrorCode::InvalidArgument,
                "sphere covers need exactly one hole");
  HODGE_REQUIRE(opt.r0_coeff > 0.0 && opt.level >= 0, ErrorCode::InvalidArgument,
                "r0_coeff must be positive and level non-negative");
  const int n = annulus.n;
  const Point c = annulus.holes[0].center;
  const double Rh = annulus.holes[0].radius;
  const double Rc = measure(annulus).Rc;
  SphereCoverInfo inf;
  inf.r0 = opt.r0_coeff * Rc;
  const double div = opt.separation_divisor > 0.0 ? opt.separation_divisor : std::pow(4.0, n);
  inf.separation = inf.r0 / div;
  inf.radius = std::pow(4.0, opt.level) * inf.r0 / std::pow(4.0, n);
  HODGE_REQUIRE(inf.radius > inf.separation, ErrorCode::InvalidArgument,
                "element radius must exceed the center separation");

  if (inf.separation >= 2.0 * Rh)
  {
    inf.centers.push_back(c + Rh * Point::UnitX());
  }
  else if (n == 2)
  {
    const double step = 2.0 * std::asin(inf.separation / (2.0 * Rh));
    const int N0 = std::max(1, static_cast<int>(std::floor(2.0 * M_PI / step + 1e-9)));
    // Among counts keeping the set maximal (spacing < 2 sep), prefer one whose pairwise
    // lenses are not thin.
    auto thinnest = [&](int N) {
      const double chord1 = 2.0 * Rh * std::sin(M_PI / N);
      double worst = kInfinity;
      for (int k = 1; k <= N / 2; k++)
      {
        const double gap = 2.0 * inf.radius - 2.0 * Rh * std::sin(M_PI * k / N);
        if (gap > 0.0)
        {
          worst = std::min(worst, gap / chord1);
        }
      }
      return worst;
    };
    int N = N0;
    for (int cand = N0; cand >= 1 && 2.0 * Rh * std::sin(M_PI / cand) < 2.0 * inf.separation;
         cand--)
    {
      if (thinnest(cand) >= 0.5)
      {
        N = cand;
        break;
      }
    }
    for (int i = 0; i < N; i++)
    {
      const double t = 2.0 * M_PI * i / N;
      inf.centers.push_back(c + Rh * Point(std::cos(t), std::sin(t), 0.0));
    }
  }
  else
  {
    const double area = 4.0 * M_PI * Rh * Rh;
    const int samples = std::max(200, static_cast<int>(40.0 * area / (inf.separation * inf.separation)));
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < samples; i++)
    {
      const double z = 1.0 - 2.0 * (i + 0.5) / samples;
      const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
      const Point t = c + Rh * Point(rr * std::cos(golden * i), rr * std::sin(golden * i), z);
      bool far = true;
      for (const auto &q : inf.centers)
      {
        far = far && (q - t).norm() >= inf.separation;
      }
      if (far)
      {
        inf.centers.push_back(t);
      }
    }
  }
  inf.packing_constant = inf.centers.size() / std::pow(Rh / inf.r0, n - 1);

  const int dim = mesh.dim();
  Cover cover;
  cover.mesh = &mesh;
  cover.max_order = opt.max_order;
  cover.margin = 0.5 * (inf.radius - inf.separation);
  std::vector<Point> proj(mesh.count(dim));
  for (int k = 0; k < mesh.count(dim); k++)
  {
    const Point x = mesh.barycenter(dim, k) - c;
    proj[k] = c + Rh * x / x.norm();
  }
  std::vector<Point> kept;
  for (const auto &t : inf.centers)
  {
    std::vector<char> mask(mesh.count(dim), 0);
    bool any = false;
    for (int k = 0; k < mesh.count(dim); k++)
    {
      mask[k] = (proj[k] - t).norm() < inf.radius ? 1 : 0;
      any = any || mask[k];
    }
    if (any)
    {
      cover.cells.push_back(std::move(mask));
      kept.push_back(t);
    }
  }
  inf.centers = std::move(kept);
  check_covered(cover);
  build_intersections(cover);
  if (info)
  {
    *info = std::move(inf);
  }
  return cover;
}

PartitionOfUnity partition_of_unity(const Cover &cover, double margin)
{
  const SimplicialMesh &mesh = *cover.mesh;
  const int n = mesh.dim();
  PartitionOfUnity pou;
  pou.margin = margin > 0.0 ? margin : cover.margin;
  HODGE_REQUIRE(pou.margin > 0.0, ErrorCode::InvalidArgument, "margin must be positive");
  const int nv = mesh.count(0);

  std::vector<std::vector<int>> vcells(nv);
  for (int c = 0; c < mesh.count(n); c++)
  {
    for (int i = 0; i <= n; i++)
    {
      vcells[mesh.cells()[c][i]].push_back(c);
    }
  }

  Vector total = Vector::Zero(nv);
  std::vector<Vector> phi;
  for (int e = 0; e < cover.size(); e++)
  {
    const auto &cells = cover.cells[e];
    const auto &vin = cover.simplex_mask({e}, 0);
    const auto &ein = cover.simplex_mask({e}, 1);
    std::vector<std::vector<std::pair<int, double>>> adj(nv);
    for (int k = 0; k < mesh.count(1); k++)
    {
      if (ein[k])
      {
        const auto &s = mesh.simplices(1)[k];
        const double w = (mesh.vertex(s[0]) - mesh.vertex(s[1])).norm();
        adj[s[0]].emplace_back(s[1], w);
        adj[s[1]].emplace_back(s[0], w);
      }
    }
    std::vector<double> dist(nv, kInfinity);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (int v = 0; v < nv; v++)
    {
      if (!vin[v])
      {
        continue;
      }
      const bool inner = std::any_of(vcells[v].begin(), vcells[v].end(),
                                     [&](int c) { return !cells[c]; });
      if (inner)
      {
        dist[v] = 0.0;
        queue.emplace(0.0, v);
      }
    }
    while (!queue.empty())
    {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v])
      {
        continue;
      }
      for (auto [u, w] : adj[v])
      {
        if (d + w < dist[u])
        {
          dist[u] = d + w;
          queue.emplace(dist[u], u);
        }
      }
    }
    Vector f = Vector::Zero(nv);
    for (int v = 0; v < nv; v++)
    {
      if (vin[v])
      {
        f(v) = std::min(1.0, dist[v] / pou.margin);
      }
    }
    total += f;
    phi.push_back(std::move(f));
  }
  for (int v = 0; v < nv; v++)
  {
    HODGE_REQUIRE(total(v) > 0.0, ErrorCode::UncoveredSimplex,
                  fmt::format("vertex {} is interior to no cover element", v));
  }
  for (auto &f : phi)
  {
    pou.rho.push_back(f.cwiseQuotient(total));
  }

  for (int c = 0; c < mesh.count(n); c++)
  {
    const auto &s = mesh.cells()[c];
    Eigen::MatrixXd E(n, n);
    for (int i = 0; i < n; i++)
    {
      E.col(i) = (mesh.vertex(s[i + 1]) - mesh.vertex(s[0])).head(n);
    }
    const Eigen::MatrixXd Et = E.transpose();
    const auto lu = Et.partialPivLu();
    for (const auto &rho : pou.rho)
    {
      Eigen::VectorXd diff(n);
      bool nonzero = rho(s[0]) != 0.0;
      for (int i = 0; i < n; i++)
      {
        diff(i) = rho(s[i + 1]) - rho(s[0]);
        nonzero = nonzero || rho(s[i + 1]) != 0.0;
      }
      if (nonzero)
      {
        pou.c_rho = std::max(pou.c_rho, lu.solve(diff).squaredNorm());
      }
    }
  }
  return pou;
}

struct LocalSolver::Impl
{
  int r = 0;
  SparseMatrix D, M, M1;
  Eigen::SparseLU<SparseMatrix> lu;
  SparseMatrix A;
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
    cg;
  bool spd = false;
  int n = 0;
};

LocalSolver::LocalSolver(const SimplicialMesh &mesh, int r) : impl_(std::make_shared<Impl>())
{
  HODGE_REQUIRE(r >= 0 && r < mesh.dim(), ErrorCode::InvalidArgument,
                "primitive degree out of range");
  Impl &im = *impl_;
  im.r = r;
  im.D = hodge::coboundary(mesh, r);
  im.M = mass_matrix(mesh, r);
  im.M1 = mass_matrix(mesh, r + 1);
  im.n = mesh.count(r);
  const SparseMatrix K = SparseMatrix(im.D.transpose() * im.M1 * im.D);

  // Without harmonic r-fields the minimizer solves the gauge-fixed SPD system
  // (K + M D W D^T M) theta = D^T M1 beta, W the inverse diagonal of the (r-1)-mass.
  if (r > 0 && betti(mesh, r) == 0)
  {
    const SparseMatrix Dm = hodge::coboundary(mesh, r - 1);
    const SparseMatrix Mm = mass_matrix(mesh, r - 1);
    Vector w(Mm.rows());
    for (int k = 0; k < Mm.rows(); k++)
    {
      w(k) = 1.0 / Mm.coeff(k, k);
    }
    const SparseMatrix MD = SparseMatrix(im.M * Dm);
    const SparseMatrix G = SparseMatrix(MD * w.asDiagonal() * SparseMatrix(MD.transpose()));
    im.A = SparseMatrix(K + G);
    im.cg.setTolerance(1e-13);
    im.cg.setMaxIterations(20000);
    im.cg.compute(im.A);
    HODGE_REQUIRE(im.cg.info() == Eigen::Success, ErrorCode::NotConverged,
                  "least-norm preconditioner failed");
    im.spd = true;
    return;
  }

  // Constraints spanning ker D_r: exact part plus the harmonic fields.
  std::vector<Vector> dense;
  SparseMatrix G;
  if (r == 0)
  {
    int nc = 0;
    const auto label = vertex_components(mesh, &nc);
    std::vector<Eigen::Triplet<double>> t;
    for (int v = 0; v < im.n; v++)
    {
      t.emplace_back(v, label[v], 1.0);
    }
    G.resize(im.n, nc);
    G.setFromTriplets(t.begin(), t.end());
  }
  else
  {
    const SparseMatrix Dm = hodge::coboundary(mesh, r - 1);
    const auto cols = coboundary_rank(mesh, r - 1).independent_columns;
    std::vector<Eigen::Triplet<double>> t;
    for (int j = 0; j < static_cast<int>(cols.size()); j++)
    {
      for (SparseMatrix::InnerIterator it(Dm, cols[j]); it; ++it)
      {
        t.emplace_back(it.row(), j, it.value());
      }
    }
    G.resize(im.n, static_cast<int>(cols.size()));
    G.setFromTriplets(t.begin(), t.end());
    if (betti(mesh, r) > 0)
    {
      const auto pencil = up_pencil(mesh, r);
      dense = harmonic_basis(pencil);
    }
  }
  double trK = 0.0, trM = 0.0;
  for (int k = 0; k < im.n; k++)
  {
    trK += K.coeff(k, k);
    trM += im.M.coeff(k, k);
  }
  const double scale = trM > 0.0 && trK > 0.0 ? trK / trM : 1.0;
  const SparseMatrix B = SparseMatrix(scale * (im.M * G));
  const int m = static_cast<int>(B.cols()) + static_cast<int>(dense.size());
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < K.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(K, k); it; ++it)
    {
      t.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int k = 0; k < B.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(B, k); it; ++it)
    {
      t.emplace_back(it.row(), im.n + k, it.value());
      t.emplace_back(im.n + k, it.row(), it.value());
    }
  }
  for (std::size_t j = 0; j < dense.size(); j++)
  {
    const Vector Mh = scale * (im.M * dense[j]);
    const int col = im.n + static_cast<int>(B.cols()) + static_cast<int>(j);
    for (int k = 0; k < im.n; k++)
    {
      if (Mh(k) != 0.0)
      {
        t.emplace_back(k, col, Mh(k));
        t.emplace_back(col, k, Mh(k));
      }
    }
  }
  SparseMatrix A(im.n + m, im.n + m);
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  im.lu.analyzePattern(A);
  im.lu.factorize(A);
  HODGE_REQUIRE(im.lu.info() == Eigen::Success, ErrorCode::CohomologyHypothesis,
                "least-norm system is singular");
}

Eigen::MatrixXd LocalSolver::solve(const Eigen::MatrixXd &beta) const
{
  const Impl &im = *impl_;
  if (im.spd)
  {
    const Eigen::MatrixXd rhs = im.D.transpose() * (im.M1 * beta);
    Eigen::MatrixXd x(rhs.rows(), rhs.cols());
    for (int j = 0; j < rhs.cols(); j++)
    {
      x.col(j) = im.cg.solve(rhs.col(j));
      HODGE_REQUIRE(im.cg.info() == Eigen::Success, ErrorCode::NotConverged,
                    fmt::format("least-norm solve stalled at residual {}", im.cg.error()));
    }
    return x;
  }
  const int total = static_cast<int>(im.lu.rows());
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(total, beta.cols());
  rhs.topRows(im.n) = im.D.transpose() * (im.M1 * beta);
  const Eigen::MatrixXd x = im.lu.solve(rhs);
  return x.topRows(im.n);
}

const SparseMatrix &LocalSolver::mass() const { return impl_->M; }
const SparseMatrix &LocalSolver::mass_next() const { return impl_->M1; }
const SparseMatrix &LocalSolver::coboundary() const { return impl_->D; }

LocalPrimitive local_primitive(const SimplicialMesh &mesh, const Vector &omega, int p, double tol)
{
  HODGE_REQUIRE(p >= 1 && p <= mesh.dim(), ErrorCode::InvalidArgument, "degree out of range");
  HODGE_REQUIRE(omega.size() == mesh.count(p), ErrorCode::InvalidArgument,
                "cochain length does not match the mesh");
  LocalSolver solver(mesh, p - 1);
  const SparseMatrix &M1 = solver.mass_next();
  const double wn = m_norm(M1, omega);
  LocalPrimitive out;
  if (wn == 0.0)
  {
    out.theta = Vector::Zero(mesh.count(p - 1));
    return out;
  }
  if (p < mesh.dim())
  {
    const Vector dw = coboundary(mesh, p) * omega;
    HODGE_REQUIRE(dw.norm() <= tol * omega.norm() * std::max(1.0, 1.0 / mesh.h()),
                  ErrorCode::NotExact, "cochain is not closed");
  }
  if (betti(mesh, p) > 0)
  {
    const auto pencil = up_pencil(mesh, p);
    for (const auto &h : harmonic_basis(pencil))
    {
      const double proj = std::abs(h.dot(M1 * omega)) / m_norm(M1, h);
      HODGE_REQUIRE(proj <= tol * wn, ErrorCode::NotExact,
                    fmt::format("cochain has a harmonic component of relative size {}", proj / wn));
    }
  }
  out.theta = solver.solve(omega).col(0);
  out.residual = m_norm(M1, solver.coboundary() * out.theta - omega) / wn;
  out.ratio = m_norm(solver.mass(), out.theta) / wn;
  HODGE_REQUIRE(out.residual <= tol, ErrorCode::NotExact,
                fmt::format("primitive residual {} exceeds {}", out.residual, tol));
  return out;
}

CechCochain cech_delta(const Cover &cover, const CechCochain &a)
{
  CechCochain out;
  out.order = a.order + 1;
  out.degree = a.degree;
  const int rows = cover.mesh->count(a.degree);
  int cols = 1;
  if (!a.values.empty())
  {
    cols = static_cast<int>(a.values.begin()->second.cols());
  }
  for (const auto &H : cover.of_order(a.order + 2))
  {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rows, cols);
    for (std::size_t k = 0; k < H.size(); k++)
    {
      auto it = a.values.find(drop(H, k));
      if (it != a.values.end())
      {
        sum += (k % 2 == 0 ? 1.0 : -1.0) * it->second;
      }
    }
    out.values[H] = masked(std::move(sum), cover.simplex_mask(H, a.degree));
  }
  return out;
}

CechCochain cech_d(const Cover &cover, const CechCochain &a)
{
  CechCochain out;
  out.order = a.order;
  out.degree = a.degree + 1;
  const SparseMatrix D = coboundary(*cover.mesh, a.degree);
  for (const auto &[I, x] : a.values)
  {
    out.values[I] = masked(D * x, cover.simplex_mask(I, out.degree));
  }
  return out;
}

CechCochain cech_homotopy(const Cover &cover, const PartitionOfUnity &pou, const CechCochain &a)
{
  HODGE_REQUIRE(a.order >= 1, ErrorCode::InvalidArgument, "homotopy needs order >= 1");
  CechCochain out;
  out.order = a.order - 1;
  out.degree = a.degree;
  const int rows = cover.mesh->count(a.degree);
  int cols = 1;
  if (!a.values.empty())
  {
    cols = static_cast<int>(a.values.begin()->second.cols());
  }
  for (const auto &I : cover.of_order(a.order))
  {
    out.values[I] = Eigen::MatrixXd::Zero(rows, cols);
  }
  for (const auto &[J, x] : a.values)
  {
    for (std::size_t k = 0; k < J.size(); k++)
    {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      out.values[drop(J, k)] += sign * cup0(*cover.mesh, a.degree, pou.rho[J[k]], x);
    }
  }
  for (auto &[I, x] : out.values)
  {
    x = masked(std::move(x), cover.simplex_mask(I, a.degree));
  }
  return out;
}

CechCochain random_cech(const Cover &cover, int order, int degree, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CechCochain out;
  out.order = order;
  out.degree = degree;
  const int rows = cover.mesh->count(degree);
  for (const auto &I : cover.of_order(order + 1))
  {
    Eigen::MatrixXd x(rows, 1);
    for (int k = 0; k < rows; k++)
    {
      x(k, 0) = normal(rng);
    }
    out.values[I] = masked(std::move(x), cover.simplex_mask(I, degree));
  }
  return out;
}

double cech_norm(const CechCochain &a)
{
  double s = 0.0;
  for (const auto &[I, x] : a.values)
  {
    s += x.squaredNorm();
  }
  return std::sqrt(s);
}

std::string check_gluing_hypotheses(const Cover &cover, int p)
{
  for (int q = 1; q <= p - 1; q++)
  {
    for (const auto &I : cover.of_order(q + 1))
    {
      const int b = betti(cover.piece(I).mesh, p - q);
      if (b != 0)
      {
        return fmt::format("H^{} of intersection {} has dimension {}", p - q, index_name(I), b);
      }
    }
  }
  for (const auto &H : cover.of_order(p + 1))
  {
    const int b = betti(cover.piece(H).mesh, 0);
    if (b != 1)
    {
      return fmt::format("intersection {} has {} components", index_name(H), b);
    }
  }
  return {};
}

namespace
{

// Local primitives theta^(q), q = 0..p-1, with D theta^(0) = omega on each element and
// D theta^(q) = delta theta^(q-1); also the top obstruction constants c_H per column.
struct Descent
{
  std::vector<CechCochain> theta;
  std::vector<MultiIndex> top;
  Eigen::MatrixXd constants;  // |top| x columns
  double variation = 0.0;     // max deviation of the top cocycle from its constant
};

Descent descend(const Cover &cover, const Eigen::MatrixXd &omega, int p)
{
  const SimplicialMesh &mesh = *cover.mesh;
  Descent out;
  CechCochain rhs;
  rhs.order = -1;
  rhs.degree = p;
  for (int q = 0; q < p; q++)
  {
    const int r = p - 1 - q;
    CechCochain th;
    th.order = q;
    th.degree = r;
    for (const auto &I : cover.of_order(q + 1))
    {
      Eigen::MatrixXd beta;
      if (q == 0)
      {
        beta = omega;
      }
      else
      {
        auto it = rhs.values.find(I);
        if (it == rhs.values.end())
        {
          continue;
        }
        beta = it->second;
      }
      const Submesh sub = cover.piece(I);
      const LocalSolver solver(sub.mesh, r);
      const Eigen::MatrixXd local = solver.solve(gather(beta, sub.parent[r + 1]));
      th.values[I] = scatter(local, sub.parent[r], mesh.count(r));
    }
    rhs = cech_delta(cover, th);
    out.theta.push_back(std::move(th));
  }
  out.top = cover.of_order(p + 1);
  const int cols = static_cast<int>(omega.cols());
  out.constants = Eigen::MatrixXd::Zero(static_cast<int>(out.top.size()), cols);
  for (std::size_t h = 0; h < out.top.size(); h++)
  {
    const auto &H = out.top[h];
    const auto verts = mask_list(cover.simplex_mask(H, 0));
    const Eigen::MatrixXd &c = rhs.values.at(H);
    for (int j = 0; j < cols; j++)
    {
      double mean = 0.0;
      for (int v : verts)
      {
        mean += c(v, j);
      }
      mean /= static_cast<double>(verts.size());
      out.constants(static_cast<int>(h), j) = mean;
      for (int v : verts)
      {
        out.variation = std::max(out.variation, std::abs(c(v, j) - mean));
      }
    }
  }
  return out;
}

// a^(q) = theta^(q) - D K a^(q+1); glues a^(0) with the partition of unity.
Eigen::MatrixXd ascend(const Cover &cover, const PartitionOfUnity &pou, std::vector<CechCochain> theta)
{
  const int p = static_cast<int>(theta.size());
  CechCochain a = theta[p - 1];
  for (int q = p - 2; q >= 0; q--)
  {
    const CechCochain dk = cech_d(cover, cech_homotopy(cover, pou, a));
    a = theta[q];
    for (auto &[I, x] : a.values)
    {
      auto it = dk.values.find(I);
      if (it != dk.values.end())
      {
        x -= it->second;
      }
    }
  }
  const int r = a.degree;
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(cover.mesh->count(r), a.values.begin()->second.cols());
  for (const auto &[I, x] : a.values)
  {
    eta += cup0(*cover.mesh, r, pou.rho[I[0]], x);
  }
  return eta;
}

CechCochain combine_columns(const CechCochain &a, const Vector &w)
{
  CechCochain out;
  out.order = a.order;
  out.degree = a.degree;
  for (const auto &[I, x] : a.values)
  {
    out.values[I] = x * w;
  }
  return out;
}

}  // namespace

CechPrimitiveResult cech_primitive(const SimplicialMesh &mesh, const Cover &cover,
                                   const PartitionOfUnity &pou, const Vector &omega, int p,
                                   double tol)
{
  HODGE_REQUIRE(cover.mesh == &mesh, ErrorCode::InvalidArgument, "cover is on another mesh");
  HODGE_REQUIRE(p >= 1 && p <= mesh.dim(), ErrorCode::InvalidArgument, "degree out of range");
  HODGE_REQUIRE(cover.max_order >= p + 1, ErrorCode::InvalidArgument,
                fmt::format("cover must store intersections up to order {}", p + 1));
  HODGE_REQUIRE(omega.size() == mesh.count(p), ErrorCode::InvalidArgument,
                "cochain length does not match the mesh");
  const SparseMatrix M = mass_matrix(mesh, p);
  const double wn = m_norm(M, omega);
  CechPrimitiveResult out;
  if (wn == 0.0)
  {
    out.eta = Vector::Zero(mesh.count(p - 1));
    return out;
  }
  if (betti(mesh, p) > 0)
  {
    const auto pencil = up_pencil(mesh, p);
    for (const auto &h : harmonic_basis(pencil))
    {
      const double proj = std::abs(h.dot(M * omega)) / m_norm(M, h);
      HODGE_REQUIRE(proj <= tol * wn, ErrorCode::NotExact,
                    fmt::format("cochain has a harmonic component of relative size {}", proj / wn));
    }
  }
  const std::string hyp = check_gluing_hypotheses(cover, p);
  HODGE_REQUIRE(hyp.empty(), ErrorCode::CohomologyHypothesis, hyp);

  Descent ds = descend(cover, omega, p);
  const auto lower = cover.of_order(p);
  if (!ds.top.empty())
  {
    std::map<MultiIndex, int> col;
    for (std::size_t i = 0; i < lower.size(); i++)
    {
      col[lower[i]] = static_cast<int>(i);
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<int>(ds.top.size()),
                                              static_cast<int>(lower.size()));
    for (std::size_t h = 0; h < ds.top.size(); h++)
    {
      for (std::size_t k = 0; k < ds.top[h].size(); k++)
      {
        C(static_cast<int>(h), col.at(drop(ds.top[h], k))) = k % 2 == 0 ? 1.0 : -1.0;
      }
    }
    const Vector c = ds.constants.col(0);
    const Vector b = C.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(c);
    const double cn = c.norm();
    out.cocycle_residual = cn > 0.0 ? (C * b - c).norm() / cn : 0.0;
    double scale = 0.0;
    for (const auto &[I, x] : ds.theta[p - 1].values)
    {
      scale = std::max(scale, x.cwiseAbs().maxCoeff());
    }
    HODGE_REQUIRE(cn <= tol * scale || out.cocycle_residual <= std::sqrt(tol),
                  ErrorCode::NotCoboundary,
                  fmt::format("top Cech cocycle is not a coboundary (residual {})",
                              out.cocycle_residual));
    out.constants.assign(c.data(), c.data() + c.size());
    for (std::size_t i = 0; i < lower.size(); i++)
    {
      const auto &mask = cover.simplex_mask(lower[i], 0);
      auto &x = ds.theta[p - 1].values.at(lower[i]);
      for (int v = 0; v < x.rows(); v++)
      {
        if (mask[v])
        {
          x(v, 0) -= b(static_cast<int>(i));
        }
      }
    }
  }
  out.eta = ascend(cover, pou, std::move(ds.theta)).col(0);
  const SparseMatrix D = coboundary(mesh, p - 1);
  out.residual = m_norm(M, D * out.eta - omega) / wn;
  out.ratio = m_norm(mass_matrix(mesh, p - 1), out.eta) / wn;
  return out;
}

GluedResult glued_primitive(const SimplicialMesh &mesh, const Cover &cover,
                            const PartitionOfUnity &pou, int p, const SolverOptions &opt)
{
  HODGE_REQUIRE(cover.mesh == &mesh, ErrorCode::InvalidArgument, "cover is on another mesh");
  HODGE_REQUIRE(p >= 1 && p <= 3 && p <= mesh.dim(), ErrorCode::InvalidArgument,
                "glued primitives need 1 <= p <= min(3, n)");
  HODGE_REQUIRE(cover.max_order >= p + 1, ErrorCode::InvalidArgument,
                fmt::format("cover must store intersections up to order {}", p + 1));
  const std::string hyp = check_gluing_hypotheses(cover, p);
  HODGE_REQUIRE(hyp.empty(), ErrorCode::CohomologyHypothesis, hyp);

  GluedResult out;
  out.k_p = static_cast<int>(cover.of_order(p + 1).size());
  const int m = 1 + out.k_p;
  const auto pencil = up_pencil(mesh, p - 1);
  const auto spec = smallest_positive(pencil, m, opt);
  const SparseMatrix D = coboundary(mesh, p - 1);
  const SparseMatrix M = mass_matrix(mesh, p);
  Eigen::MatrixXd phis(mesh.count(p), m);
  for (int k = 0; k < m; k++)
  {
    phis.col(k) = D * spec.eigenvectors[k] / std::sqrt(spec.eigenvalues[k]);
  }
  out.eigenvalues = spec.eigenvalues;

  const Descent ds = descend(cover, phis, p);
  Vector a = Vector::Zero(m);
  if (out.k_p == 0)
  {
    a(0) = 1.0;
  }
  else
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ds.constants, Eigen::ComputeFullV);
    a = svd.matrixV().col(m - 1);
    const double cn = ds.constants.norm();
    out.constraint_residual = cn > 0.0 ? (ds.constants * a).norm() / cn : 0.0;
    HODGE_REQUIRE(out.constraint_residual <= 1e-6, ErrorCode::ConstraintRank,
                  fmt::format("no combination cancels the top obstruction (residual {})",
                              out.constraint_residual));
  }
  std::vector<CechCochain> theta(p);
  for (int q = 0; q < p; q++)
  {
    theta[q] = combine_columns(ds.theta[q], a);
  }
  out.phi = phis * a;
  out.psi_bar = ascend(cover, pou, std::move(theta)).col(0);
  const double pn = m_norm(M, out.phi);
  out.residual = m_norm(M, D * out.psi_bar - out.phi) / pn;
  const double sn = m_norm(mass_matrix(mesh, p - 1), out.psi_bar);
  out.quotient = pn * pn / (sn * sn);
  return out;
}

double first_exact_eigenvalue(const SimplicialMesh &mesh, int p, const SolverOptions &opt)
{
  HODGE_REQUIRE(p >= 1 && p <= mesh.dim(), ErrorCode::InvalidArgument, "degree out of range");
  const auto pencil = up_pencil(mesh, p - 1);
  return smallest_positive(pencil, 1, opt).eigenvalues[0];
}

McGowanInput mcgowan_input(const Cover &cover, const PartitionOfUnity &pou, int p,
                           const SolverOptions &opt)
{
  HODGE_REQUIRE(p >= 1 && p <= 3, ErrorCode::InvalidArgument, "p must be 1, 2 or 3");
  HODGE_REQUIRE(cover.max_order >= std::min(p, 3), ErrorCode::InvalidArgument,
                "cover stores too few intersections");
  const int k0 = cover.size();
  McGowanInput in;
  in.p = p;
  in.c_rho = pou.c_rho;
  std::map<MultiIndex, double> lower;
  auto eig = [&](const MultiIndex &I, int deg) {
    if (!cover.intersections.count(I))
    {
      return kInfinity;
    }
    const Submesh sub = cover.piece(I);
    return first_exact_eigenvalue(sub.mesh, deg, opt);
  };
  for (int i = 0; i < k0; i++)
  {
    in.piece.push_back(eig({i}, p));
  }
  if (p >= 2)
  {
    in.pair.assign(k0 * k0, kInfinity);
    for (int i = 0; i < k0; i++)
    {
      for (int j = i; j < k0; j++)
      {
        const MultiIndex I = i == j ? MultiIndex{i} : MultiIndex{i, j};
        const double l = eig(I, p - 1);
        in.pair[i * k0 + j] = in.pair[j * k0 + i] = l;
        lower[I] = l;
      }
    }
  }
  if (p == 3)
  {
    in.triple.assign(k0 * k0 * k0, kInfinity);
    for (int i = 0; i < k0; i++)
    {
      for (int j = 0; j < k0; j++)
      {
        for (int k = 0; k < k0; k++)
        {
          MultiIndex I{i, j, k};
          std::sort(I.begin(), I.end());
          I.erase(std::unique(I.begin(), I.end()), I.end());
          auto it = lower.find(I);
          if (it == lower.end())
          {
            it = lower.emplace(I, eig(I, p - 2)).first;
          }
          in.triple[(i * k0 + j) * k0 + k] = it->second;
        }
      }
    }
  }
  return in;
}

std::string cover_csv(const Cover &cover)
{
  std::string out = csv_row({"index", "order", "cells", "volume"});
  for (const auto &[I, mask] : cover.intersections)
  {
    const auto cells = std::count(mask.begin(), mask.end(), 1);
    out += csv_row({index_name(I), std::to_string(I.size()), std::to_string(cells),
                    fmt::format("{:.17g}", cover.volume(I))});
  }
  return out;
}

std::string partition_csv(const Cover &cover, const PartitionOfUnity &pou)
{
  std::string out = csv_row({"element", "vertex", "x", "y", "z", "rho"});
  const SimplicialMesh &mesh = *cover.mesh;
  for (std::size_t e = 0; e < pou.rho.size(); e++)
  {
    for (int v = 0; v < mesh.count(0); v++)
    {
      if (pou.rho[e](v) != 0.0)
      {
        const Point &x = mesh.vertex(v);
        out += csv_row({std::to_string(e), std::to_string(v), fmt::format("{:.17g}", x(0)),
                        fmt::format("{:.17g}", x(1)), fmt::format("{:.17g}", x(2)),
                        fmt::format("{:.17g}", pou.rho[e](v))});
      }
    }
  }
  return out;
}

}  // namespace hodge
