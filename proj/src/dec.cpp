// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/dec.hpp"

#include <cmath>
#include <fstream>
#include <functional>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace hodge
{

std::vector<std::vector<int>> form_basis(int n, int p)
{
  std::vector<std::vector<int>> out;
  std::vector<int> idx(p);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == p)
    {
      out.push_back(idx);
      return;
    }
    for (int i = start; i < n; i++)
    {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

double AnalyticForm::apply(const Point &x, const std::vector<Point> &t) const
{
  const auto basis = form_basis(dim, degree);
  std::vector<double> c(basis.size());
  components(x, c.data());
  if (degree == 0)
  {
    return c[0];
  }
  double v = 0.0;
  for (std::size_t b = 0; b < basis.size(); b++)
  {
    Eigen::MatrixXd m(degree, degree);
    for (int k = 0; k < degree; k++)
    {
      for (int l = 0; l < degree; l++)
      {
        m(k, l) = t[k](basis[b][l]);
      }
    }
    v += c[b] * m.determinant();
  }
  return v;
}

IntSparseMatrix coboundary_int(const SimplicialMesh &mesh, int p)
{
  const int n = mesh.dim();
  HODGE_REQUIRE(p >= 0 && p <= n, ErrorCode::InvalidArgument, "degree out of range");
  if (p == n)
  {
    return IntSparseMatrix(0, mesh.count(n));
  }
  std::vector<Eigen::Triplet<int>> trip;
  const auto &faces = mesh.faces(p + 1);
  trip.reserve(faces.size() * (p + 2));
  for (int k = 0; k < static_cast<int>(faces.size()); k++)
  {
    for (int i = 0; i <= p + 1; i++)
    {
      trip.emplace_back(k, faces[k][i], (i % 2) ? -1 : 1);
    }
  }
  IntSparseMatrix D(mesh.count(p + 1), mesh.count(p));
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

SparseMatrix coboundary(const SimplicialMesh &mesh, int p)
{
  return coboundary_int(mesh, p).cast<double>();
}

bool coboundary_squares_to_zero(const SimplicialMesh &mesh, int p)
{
  if (p + 1 >= mesh.dim())
  {
    return true;
  }
  IntSparseMatrix P = coboundary_int(mesh, p + 1) * coboundary_int(mesh, p);
  for (int k = 0; k < P.outerSize(); k++)
  {
    for (IntSparseMatrix::InnerIterator it(P, k); it; ++it)
    {
      if (it.value() != 0)
      {
        return false;
      }
    }
  }
  return true;
}

namespace
{

double small_det(const double m[3][3], int p)
{
  switch (p)
  {
  case 0:
    return 1.0;
  case 1:
    return m[0][0];
  case 2:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  default:
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
}

}  // namespace

SparseMatrix mass_matrix(const SimplicialMesh &mesh, int p)
{
  const int n = mesh.dim();
  HODGE_REQUIRE(p >= 0 && p <= n, ErrorCode::InvalidArgument, "degree out of range");
  const auto local_faces = form_basis(n + 1, p + 1);
  const int nl = static_cast<int>(local_faces.size());
  double pfact = 1.0;
  for (int k = 2; k <= p; k++)
  {
    pfact *= k;
  }
  double nfact = 1.0;
  for (int k = 2; k <= n; k++)
  {
    nfact *= k;
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(mesh.count(n)) * nl * nl);
  using Small = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
  Small E(n, n), grads(n + 1, n);
  double G[4][4];
  std::vector<int> gidx(nl);
  for (int c = 0; c < mesh.count(n); c++)
  {
    const Simplex &s = mesh.simplices(n)[c];
    const Point &x0 = mesh.vertex(s[0]);
    for (int l = 1; l <= n; l++)
    {
      E.col(l - 1) = (mesh.vertex(s[l]) - x0).head(n);
    }
    const double det = E.determinant();
    HODGE_REQUIRE(det != 0.0, ErrorCode::InvertedSimplex, fmt::format("degenerate cell {}", c));
    const double vol = std::abs(det) / nfact;
    const Small Einv = E.inverse();
    grads.bottomRows(n) = Einv;
    grads.row(0) = -Einv.colwise().sum();
    for (int a = 0; a <= n; a++)
    {
      for (int b = 0; b <= n; b++)
      {
        G[a][b] = grads.row(a).dot(grads.row(b));
      }
    }
    for (int a = 0; a < nl; a++)
    {
      Simplex g{-1, -1, -1, -1};
      for (int i = 0; i <= p; i++)
      {
        g[i] = s[local_faces[a][i]];
      }
      gidx[a] = mesh.find(p, g);
    }
    const double lam = vol / ((n + 1) * (n + 2));
    for (int a = 0; a < nl; a++)
    {
      const auto &sa = local_faces[a];
      for (int b = a; b < nl; b++)
      {
        const auto &sb = local_faces[b];
        double v = 0.0;
        for (int i = 0; i <= p; i++)
        {
          for (int j = 0; j <= p; j++)
          {
            const double integral = lam * (sa[i] == sb[j] ? 2.0 : 1.0);
            double sub[3][3];
            for (int r = 0, rr = 0; r <= p; r++)
            {
              if (r == i)
              {
                continue;
              }
              for (int q = 0, qq = 0; q <= p; q++)
              {
                if (q == j)
                {
                  continue;
                }
                sub[rr][qq++] = G[sa[r]][sb[q]];
              }
              rr++;
            }
            v += (((i + j) % 2) ? -1.0 : 1.0) * integral * small_det(sub, p);
          }
        }
        v *= pfact * pfact;
        trip.emplace_back(gidx[a], gidx[b], v);
        if (b != a)
        {
          trip.emplace_back(gidx[b], gidx[a], v);
        }
      }
    }
  }
  SparseMatrix M(mesh.count(p), mesh.count(p));
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

SpectralPencil up_pencil(const SimplicialMesh &mesh, int p)
{
  HODGE_REQUIRE(p >= 0 && p < mesh.dim(), ErrorCode::InvalidArgument, "degree out of range");
  SpectralPencil pencil;
  const SparseMatrix D = coboundary(mesh, p);
  const SparseMatrix M1 = mass_matrix(mesh, p + 1);
  SparseMatrix K = SparseMatrix(D.transpose()) * M1 * D;
  pencil.K = 0.5 * (K + SparseMatrix(K.transpose()));
  pencil.M = mass_matrix(mesh, p);
  pencil.degree = p;
  pencil.mesh = &mesh;
  return pencil;
}

double rayleigh(const SpectralPencil &pencil, const Vector &theta)
{
  const double den = theta.dot(pencil.M * theta);
  HODGE_REQUIRE(den > 0.0, ErrorCode::InvalidArgument, "Rayleigh quotient of a zero cochain");
  return theta.dot(pencil.K * theta) / den;
}

namespace
{

struct QuadRule
{
  std::vector<std::vector<double>> xi;  // reference coordinates (p entries)
  std::vector<double> w;                // weights summing to the reference volume 1/p!
};

QuadRule simplex_rule(int p)
{
  QuadRule q;
  if (p == 0)
  {
    q.xi = {{}};
    q.w = {1.0};
    return q;
  }
  const double g[3] = {0.5 - std::sqrt(0.15), 0.5, 0.5 + std::sqrt(0.15)};
  const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  if (p == 1)
  {
    for (int i = 0; i < 3; i++)
    {
      q.xi.push_back({g[i]});
      q.w.push_back(gw[i]);
    }
    return q;
  }
  if (p == 2)
  {
    const double a1 = 0.445948490915965, b1 = 0.108103018168070, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, b2 = 0.816847572980459, w2 = 0.109951743655322;
    const double pts[6][3] = {{a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1},
                              {a2, a2, b2}, {a2, b2, a2}, {b2, a2, a2}};
    for (int k = 0; k < 6; k++)
    {
      q.xi.push_back({pts[k][1], pts[k][2]});
      q.w.push_back(0.5 * (k < 3 ? w1 : w2));
    }
    return q;
  }
  // Collapsed tensor Gauss rule on the tetrahedron.
  for (int i = 0; i < 3; i++)
  {
    for (int j = 0; j < 3; j++)
    {
      for (int k = 0; k < 3; k++)
      {
        const double u = g[i], v = g[j], z = g[k];
        q.xi.push_back({u * (1 - v) * (1 - z), v * (1 - z), z});
        q.w.push_back(gw[i] * gw[j] * gw[k] * (1 - v) * (1 - z) * (1 - z));
      }
    }
  }
  return q;
}

}  // namespace

Cochain de_rham_sample(const SimplicialMesh &mesh, const AnalyticForm &form,
                       std::vector<int> *flagged)
{
  const int p = form.degree;
  HODGE_REQUIRE(p >= 0 && p <= mesh.dim(), ErrorCode::InvalidArgument, "form degree out of range");
  HODGE_REQUIRE(form.dim == mesh.dim(), ErrorCode::InvalidArgument, "form dimension mismatch");
  const QuadRule rule = simplex_rule(p);
  Cochain out;
  out.degree = p;
  out.values = Vector::Zero(mesh.count(p));
  std::vector<Point> t(p);
  for (int k = 0; k < mesh.count(p); k++)
  {
    const Simplex &s = mesh.simplices(p)[k];
    const Point &x0 = mesh.vertex(s[0]);
    for (int i = 1; i <= p; i++)
    {
      t[i - 1] = mesh.vertex(s[i]) - x0;
    }
    double v = 0.0;
    bool singular = false;
    for (int i = 0; i <= p && form.singular && !singular; i++)
    {
      singular = form.singular(mesh.vertex(s[i]));
    }
    for (std::size_t qp = 0; qp < rule.w.size() && !singular; qp++)
    {
      Point x = x0;
      for (int i = 0; i < p; i++)
      {
        x += rule.xi[qp][i] * t[i];
      }
      if (form.singular && form.singular(x))
      {
        singular = true;
        break;
      }
      v += rule.w[qp] * form.apply(x, t);
    }
    if (singular)
    {
      if (flagged)
      {
        flagged->push_back(k);
      }
      v = 0.0;
    }
    out.values(k) = v;
  }
  return out;
}

void export_coo(const SparseMatrix &A, const std::string &path)
{
  std::ofstream os(path);
  HODGE_REQUIRE(os, ErrorCode::Io, "cannot open " + path);
  os << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  for (int k = 0; k < A.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it)
    {
      os << it.row() << ' ' << it.col() << ' ' << fmt::format("{:.17g}", it.value()) << '\n';
    }
  }
}

}  // namespace hodge
