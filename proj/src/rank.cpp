// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Exact ranks of coboundary matrices. D_0 and D_{n-1} reduce to spanning forests of the
// vertex graph and of the dual graph (cells plus one outside node); the remaining case is
// column reduction of D_p^T modulo a prime, whose pivot rows give independent columns of D_p.

#include <algorithm>
#include <numeric>

#include "hodge/dec.hpp"

namespace hodge
{

namespace
{

class UnionFind
{
public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a)
  {
    while (parent_[a] != a)
    {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  bool unite(int a, int b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
    {
      return false;
    }
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

private:
  std::vector<int> parent_;
};

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p)
{
  return static_cast<std::uint32_t>((a * b) % p);
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p)
{
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e)
  {
    if (e & 1)
    {
      result = (result * base) % p;
    }
    base = (base * base) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

RankInfo modular_rank(const SimplicialMesh &mesh, int p, std::uint32_t prime)
{
  using Entry = std::pair<int, std::uint32_t>;
  const int rows = mesh.count(p);
  const int cols = mesh.count(p + 1);
  std::vector<int> pivot_col(rows, -1);
  std::vector<std::vector<Entry>> reduced(cols);
  std::vector<Entry> work, merged;
  for (int j = 0; j < cols; j++)
  {
    work.clear();
    const auto &f = mesh.faces(p + 1)[j];
    for (int i = 0; i <= p + 1; i++)
    {
      work.emplace_back(f[i], (i % 2) ? prime - 1 : 1u);
    }
    std::sort(work.begin(), work.end());
    while (!work.empty())
    {
      const int low = work.back().first;
      const int k = pivot_col[low];
      if (k < 0)
      {
        break;
      }
      const auto &rk = reduced[k];
      const std::uint32_t factor =
        mulmod(work.back().second, inverse(rk.back().second, prime), prime);
      merged.clear();
      std::size_t a = 0, b = 0;
      while (a < work.size() || b < rk.size())
      {
        if (b == rk.size() || (a < work.size() && work[a].first < rk[b].first))
        {
          merged.push_back(work[a++]);
        }
        else if (a == work.size() || rk[b].first < work[a].first)
        {
          merged.emplace_back(rk[b].first, (prime - mulmod(factor, rk[b].second, prime)) % prime);
          b++;
        }
        else
        {
          const std::uint32_t v =
            (work[a].second + prime - mulmod(factor, rk[b].second, prime)) % prime;
          if (v != 0)
          {
            merged.emplace_back(work[a].first, v);
          }
          a++;
          b++;
        }
      }
      std::swap(work, merged);
    }
    if (!work.empty())
    {
      pivot_col[work.back().first] = j;
      reduced[j] = work;
    }
  }
  RankInfo info;
  for (int r = 0; r < rows; r++)
  {
    if (pivot_col[r] >= 0)
    {
      info.independent_columns.push_back(r);
    }
  }
  info.rank = static_cast<int>(info.independent_columns.size());
  return info;
}

}  // namespace

std::vector<int> vertex_components(const SimplicialMesh &mesh, int *count)
{
  UnionFind uf(mesh.count(0));
  for (const auto &e : mesh.simplices(1))
  {
    uf.unite(e[0], e[1]);
  }
  std::vector<int> label(mesh.count(0), -1), root_label(mesh.count(0), -1);
  int n = 0;
  for (int v = 0; v < mesh.count(0); v++)
  {
    const int r = uf.find(v);
    if (root_label[r] < 0)
    {
      root_label[r] = n++;
    }
    label[v] = root_label[r];
  }
  if (count)
  {
    *count = n;
  }
  return label;
}

RankInfo coboundary_rank(const SimplicialMesh &mesh, int p, std::uint32_t prime)
{
  const int n = mesh.dim();
  HODGE_REQUIRE(p >= -1 && p <= n, ErrorCode::InvalidArgument, "degree out of range");
  RankInfo info;
  if (p < 0 || p == n)
  {
    return info;
  }
  if (p == 0)
  {
    UnionFind uf(mesh.count(0));
    for (const auto &e : mesh.simplices(1))
    {
      uf.unite(e[0], e[1]);
    }
    for (int v = 0; v < mesh.count(0); v++)
    {
      if (uf.find(v) != v)
      {
        info.independent_columns.push_back(v);
      }
    }
    info.rank = static_cast<int>(info.independent_columns.size());
    return info;
  }
  if (p == n - 1)
  {
    const int nc = mesh.count(n);
    UnionFind uf(nc + 1);
    for (int f = 0; f < mesh.count(n - 1); f++)
    {
      const auto &fc = mesh.facet_cells()[f];
      if (uf.unite(fc[0], fc[1] < 0 ? nc : fc[1]))
      {
        info.independent_columns.push_back(f);
      }
    }
    info.rank = static_cast<int>(info.independent_columns.size());
    return info;
  }
  return modular_rank(mesh, p, prime);
}

int betti(const SimplicialMesh &mesh, int p)
{
  HODGE_REQUIRE(p >= 0 && p <= mesh.dim(), ErrorCode::InvalidArgument, "degree out of range");
  return mesh.count(p) - coboundary_rank(mesh, p).rank - coboundary_rank(mesh, p - 1).rank;
}

std::vector<int> betti_numbers(const SimplicialMesh &mesh)
{
  std::vector<int> ranks(mesh.dim() + 2, 0);
  for (int p = 0; p < mesh.dim(); p++)
  {
    ranks[p + 1] = coboundary_rank(mesh, p).rank;
  }
  std::vector<int> b;
  for (int p = 0; p <= mesh.dim(); p++)
  {
    b.push_back(mesh.count(p) - ranks[p + 1] - ranks[p]);
  }
  return b;
}

}  // namespace hodge
