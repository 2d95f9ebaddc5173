// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace hodge
{

const char *to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::InvalidDomain: return "invalid domain";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::InvertedSimplex: return "inverted simplex";
    case ErrorCode::OrientationInconsistent: return "orientation inconsistency";
    case ErrorCode::DanglingFace: return "dangling face";
    case ErrorCode::DuplicateSimplex: return "duplicate simplex";
    case ErrorCode::EmptySelection: return "empty selection";
    case ErrorCode::BoundarySelfIntersection: return "boundary self-intersection";
    case ErrorCode::QualityUnreachable: return "unreachable quality target";
    case ErrorCode::MeshTooCoarse: return "mesh too coarse";
    case ErrorCode::NotConverged: return "not converged";
    case ErrorCode::AmbiguousKernel: return "ambiguous kernel separation";
    case ErrorCode::RankAmbiguous: return "rank ambiguity";
    case ErrorCode::NotExact: return "cochain not exact";
    case ErrorCode::NotCoboundary: return "Cech cocycle not a coboundary";
    case ErrorCode::UncoveredSimplex: return "uncovered simplex";
    case ErrorCode::CohomologyHypothesis: return "cohomology hypothesis fails";
    case ErrorCode::ConstraintRank: return "constraint system rank-deficient";
    case ErrorCode::SingularPoint: return "singular point";
    case ErrorCode::MissingData: return "missing data";
    case ErrorCode::InsufficientLevels: return "insufficient levels";
    case ErrorCode::NonMonotone: return "non-monotone ladder";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Io: return "io error";
  }
  return "error";
}

Simplex make_simplex(std::initializer_list<int> verts)
{
  Simplex s{-1, -1, -1, -1};
  std::copy(verts.begin(), verts.end(), s.begin());
  return s;
}

Simplex sorted(Simplex s, int p)
{
  std::sort(s.begin(), s.begin() + p + 1);
  return s;
}

double signed_volume(int dim, const std::vector<Point> &verts, const Simplex &s)
{
  const Point &o = verts[s[0]];
  if (dim == 1)
  {
    return verts[s[1]](0) - o(0);
  }
  if (dim == 2)
  {
    Eigen::Vector3d a = verts[s[1]] - o, b = verts[s[2]] - o;
    return 0.5 * (a(0) * b(1) - a(1) * b(0));
  }
  Eigen::Matrix3d e;
  e.col(0) = verts[s[1]] - o;
  e.col(1) = verts[s[2]] - o;
  e.col(2) = verts[s[3]] - o;
  return e.determinant() / 6.0;
}

namespace
{

// Parity (+1 or -1) of the permutation sorting the first n entries.
int permutation_sign(Simplex s, int n)
{
  int sign = 1;
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j + 1 < n - i; j++)
    {
      if (s[j] > s[j + 1])
      {
        std::swap(s[j], s[j + 1]);
        sign = -sign;
      }
    }
  }
  return sign;
}

Simplex drop(const Simplex &s, int p, int i)
{
  Simplex f{-1, -1, -1, -1};
  for (int k = 0, m = 0; k <= p; k++)
  {
    if (k != i)
    {
      f[m++] = s[k];
    }
  }
  return f;
}

// Orientation induced on facet i of an oriented cell, relative to the sorted facet.
int induced_sign(const Simplex &cell, int dim, int i)
{
  return ((i % 2) ? -1 : 1) * permutation_sign(drop(cell, dim, i), dim);
}

}  // namespace

SimplicialMesh SimplicialMesh::from_cells(int dim, std::vector<Point> vertices,
                                          std::vector<Simplex> cells,
                                          const std::unordered_map<Simplex, int, SimplexHash> &tags,
                                          int default_tag)
{
  HODGE_REQUIRE(dim >= 1 && dim <= 3, ErrorCode::InvalidArgument, "mesh dimension must be 1..3");
  HODGE_REQUIRE(!cells.empty(), ErrorCode::EmptySelection, "mesh has no cells");
  SimplicialMesh m;
  m.dim_ = dim;
  m.vertices_ = std::move(vertices);
  const int nv = static_cast<int>(m.vertices_.size());
  for (auto &c : cells)
  {
    for (int i = 0; i <= dim; i++)
    {
      HODGE_REQUIRE(c[i] >= 0 && c[i] < nv, ErrorCode::Parse, "cell vertex index out of range");
    }
    for (int i = dim + 1; i < 4; i++)
    {
      c[i] = -1;
    }
    double vol = signed_volume(dim, m.vertices_, c);
    HODGE_REQUIRE(vol != 0.0, ErrorCode::InvertedSimplex, "degenerate cell");
    if (vol < 0.0)
    {
      std::swap(c[0], c[1]);
    }
  }

  // Top simplices in lexicographic order of their sorted tuples.
  std::vector<int> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Simplex> keys(cells.size());
  for (std::size_t i = 0; i < cells.size(); i++)
  {
    keys[i] = sorted(cells[i], dim);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  m.cells_.resize(cells.size());
  m.simplices_[dim].resize(cells.size());
  for (std::size_t i = 0; i < order.size(); i++)
  {
    m.cells_[i] = cells[order[i]];
    m.simplices_[dim][i] = keys[order[i]];
    if (i > 0)
    {
      HODGE_REQUIRE(m.simplices_[dim][i] != m.simplices_[dim][i - 1],
                    ErrorCode::DuplicateSimplex, "cell listed twice");
    }
  }

  for (int p = dim - 1; p >= 0; p--)
  {
    auto &up = m.simplices_[p + 1];
    std::vector<Simplex> faces;
    faces.reserve(up.size() * (p + 2));
    for (const auto &s : up)
    {
      for (int i = 0; i <= p + 1; i++)
      {
        faces.push_back(drop(s, p + 1, i));
      }
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    m.simplices_[p] = std::move(faces);
    auto &idx = m.index_[p];
    idx.reserve(m.simplices_[p].size() * 2);
    for (int k = 0; k < static_cast<int>(m.simplices_[p].size()); k++)
    {
      idx.emplace(m.simplices_[p][k], k);
    }
    auto &ft = m.faces_[p + 1];
    ft.resize(up.size());
    for (std::size_t k = 0; k < up.size(); k++)
    {
      Simplex f{-1, -1, -1, -1};
      for (int i = 0; i <= p + 1; i++)
      {
        f[i] = idx.at(drop(up[k], p + 1, i));
      }
      ft[k] = f;
    }
  }
  for (int k = 0; k < static_cast<int>(m.simplices_[dim].size()); k++)
  {
    m.index_[dim].emplace(m.simplices_[dim][k], k);
  }
  HODGE_REQUIRE(static_cast<int>(m.simplices_[0].size()) == nv, ErrorCode::DanglingFace,
                "vertex not used by any cell");

  const int nf = m.count(dim - 1);
  m.facet_cells_.assign(nf, {-1, -1});
  for (int c = 0; c < m.count(dim); c++)
  {
    for (int i = 0; i <= dim; i++)
    {
      auto &fc = m.facet_cells_[m.faces_[dim][c][i]];
      if (fc[0] < 0)
      {
        fc[0] = c;
      }
      else
      {
        HODGE_REQUIRE(fc[1] < 0, ErrorCode::DanglingFace, "facet shared by more than two cells");
        fc[1] = c;
      }
    }
  }
  m.tags_.assign(nf, kInterior);
  for (int f = 0; f < nf; f++)
  {
    if (m.facet_cells_[f][1] < 0)
    {
      auto it = tags.find(m.simplices_[dim - 1][f]);
      m.tags_[f] = (it == tags.end()) ? default_tag : it->second;
    }
  }

  m.h_ = 0.0;
  for (const auto &e : m.simplices_[1])
  {
    m.h_ = std::max(m.h_, (m.vertices_[e[0]] - m.vertices_[e[1]]).norm());
  }
  return m;
}

int SimplicialMesh::find(int p, const Simplex &s) const
{
  auto it = index_[p].find(s);
  return it == index_[p].end() ? -1 : it->second;
}

void SimplicialMesh::set_boundary_tag(int facet, int tag)
{
  HODGE_REQUIRE(facet >= 0 && facet < static_cast<int>(tags_.size()) && facet_cells_[facet][1] < 0,
                ErrorCode::DanglingFace, fmt::format("facet {} is not a boundary facet", facet));
  tags_[facet] = tag;
}

double SimplicialMesh::cell_volume(int c) const
{
  return std::abs(signed_volume(dim_, vertices_, cells_[c]));
}

Point SimplicialMesh::barycenter(int p, int k) const
{
  Point b = Point::Zero();
  for (int i = 0; i <= p; i++)
  {
    b += vertices_[simplices_[p][k][i]];
  }
  return b / (p + 1);
}

double SimplicialMesh::volume() const
{
  double v = 0.0;
  for (int c = 0; c < count(dim_); c++)
  {
    v += cell_volume(c);
  }
  return v;
}

int SimplicialMesh::euler_characteristic() const
{
  int chi = 0;
  for (int p = 0; p <= dim_; p++)
  {
    chi += (p % 2 ? -1 : 1) * count(p);
  }
  return chi;
}

Submesh submesh(const SimplicialMesh &mesh, const std::vector<char> &cell_mask)
{
  const int n = mesh.dim();
  std::vector<int> vmap(mesh.count(0), -1);
  std::vector<Point> verts;
  std::vector<Simplex> cells;
  std::vector<int> vparent;
  // Monotone renumbering keeps sorted simplices, and so orientations, equal to the parent's.
  for (int c = 0; c < mesh.count(n); c++)
  {
    if (cell_mask[c])
    {
      for (int i = 0; i <= n; i++)
      {
        vmap[mesh.cells()[c][i]] = 0;
      }
    }
  }
  for (int v = 0; v < mesh.count(0); v++)
  {
    if (vmap[v] == 0)
    {
      vmap[v] = static_cast<int>(verts.size());
      verts.push_back(mesh.vertex(v));
      vparent.push_back(v);
    }
  }
  for (int c = 0; c < mesh.count(n); c++)
  {
    if (!cell_mask[c])
    {
      continue;
    }
    Simplex s = mesh.cells()[c];
    for (int i = 0; i <= n; i++)
    {
      s[i] = vmap[s[i]];
    }
    cells.push_back(s);
  }
  HODGE_REQUIRE(!cells.empty(), ErrorCode::EmptySelection, "submesh predicate selects no cell");
  Submesh sub;
  sub.mesh = SimplicialMesh::from_cells(n, std::move(verts), std::move(cells), {}, kCut);
  for (int p = 0; p <= n; p++)
  {
    auto &par = sub.parent[p];
    par.resize(sub.mesh.count(p));
    for (int k = 0; k < sub.mesh.count(p); k++)
    {
      Simplex s = sub.mesh.simplices(p)[k];
      for (int i = 0; i <= p; i++)
      {
        s[i] = vparent[s[i]];
      }
      par[k] = mesh.find(p, sorted(s, p));
    }
  }
  const auto &ptags = mesh.boundary_tags();
  for (int f = 0; f < sub.mesh.count(n - 1); f++)
  {
    if (sub.mesh.facet_cells()[f][1] < 0)
    {
      int t = ptags[sub.parent[n - 1][f]];
      if (t != kInterior)
      {
        sub.mesh.set_boundary_tag(f, t);
      }
    }
  }
  return sub;
}

Submesh submesh(const SimplicialMesh &mesh, const std::function<bool(const Point &)> &keep)
{
  const int n = mesh.dim();
  std::vector<char> mask(mesh.count(n));
  for (int c = 0; c < mesh.count(n); c++)
  {
    mask[c] = keep(mesh.barycenter(n, c)) ? 1 : 0;
  }
  return submesh(mesh, mask);
}

void validate(const SimplicialMesh &mesh)
{
  const int n = mesh.dim();
  for (int c = 0; c < mesh.count(n); c++)
  {
    HODGE_REQUIRE(signed_volume(n, mesh.vertices(), mesh.cells()[c]) > 0.0,
                  ErrorCode::InvertedSimplex, fmt::format("cell {} has nonpositive volume", c));
  }
  for (int f = 0; f < mesh.count(n - 1); f++)
  {
    const auto &fc = mesh.facet_cells()[f];
    if (fc[1] < 0)
    {
      continue;
    }
    int s[2];
    for (int k = 0; k < 2; k++)
    {
      const auto &fi = mesh.faces(n)[fc[k]];
      const int j = static_cast<int>(std::find(fi.begin(), fi.begin() + n + 1, f) - fi.begin());
      const Simplex &cell = mesh.cells()[fc[k]];
      const int v = mesh.simplices(n)[fc[k]][j];
      const int i = static_cast<int>(std::find(cell.begin(), cell.begin() + n + 1, v) - cell.begin());
      s[k] = induced_sign(cell, n, i);
    }
    HODGE_REQUIRE(s[0] == -s[1], ErrorCode::OrientationInconsistent,
                  fmt::format("cells {} and {} induce the same orientation on facet {}", fc[0],
                              fc[1], f));
  }
}

std::string format_mesh(const SimplicialMesh &mesh)
{
  const int n = mesh.dim();
  std::string out = fmt::format("dim {}\nvertices {}\n", n, mesh.count(0));
  for (const auto &v : mesh.vertices())
  {
    for (int d = 0; d < n; d++)
    {
      out += (d ? " " : "") + fmt::format("{:.17g}", v(d));
    }
    out += '\n';
  }
  out += fmt::format("cells {}\n", mesh.count(n));
  for (const auto &c : mesh.cells())
  {
    for (int i = 0; i <= n; i++)
    {
      out += (i ? " " : "") + std::to_string(c[i]);
    }
    out += '\n';
  }
  std::vector<std::pair<int, int>> bnd;
  for (int f = 0; f < mesh.count(n - 1); f++)
  {
    if (mesh.boundary_tags()[f] != kInterior)
    {
      bnd.emplace_back(f, mesh.boundary_tags()[f]);
    }
  }
  out += fmt::format("boundary {}\n", bnd.size());
  for (auto [f, t] : bnd)
  {
    out += fmt::format("{} {}\n", f, t);
  }
  return out;
}

void export_mesh(const SimplicialMesh &mesh, const std::string &path)
{
  std::ofstream os(path);
  HODGE_REQUIRE(os, ErrorCode::Io, "cannot open " + path);
  os << format_mesh(mesh);
}

SimplicialMesh parse_mesh(const std::string &text)
{
  std::istringstream is(text);
  std::string key;
  auto expect = [&](const char *word) {
    HODGE_REQUIRE(is >> key && key == word, ErrorCode::Parse,
                  fmt::format("expected '{}'", word));
  };
  auto read_int = [&]() {
    long long v;
    HODGE_REQUIRE(static_cast<bool>(is >> v), ErrorCode::Parse, "expected integer");
    return v;
  };
  expect("dim");
  const int n = static_cast<int>(read_int());
  HODGE_REQUIRE(n >= 1 && n <= 3, ErrorCode::Parse, "dim must be 1..3");
  expect("vertices");
  const long long nv = read_int();
  HODGE_REQUIRE(nv > 0, ErrorCode::Parse, "no vertices");
  std::vector<Point> verts(nv, Point::Zero());
  for (auto &v : verts)
  {
    for (int d = 0; d < n; d++)
    {
      HODGE_REQUIRE(static_cast<bool>(is >> v(d)), ErrorCode::Parse, "bad coordinate");
    }
  }
  expect("cells");
  const long long nc = read_int();
  HODGE_REQUIRE(nc > 0, ErrorCode::Parse, "no cells");
  std::vector<Simplex> cells(nc, Simplex{-1, -1, -1, -1});
  for (auto &c : cells)
  {
    for (int i = 0; i <= n; i++)
    {
      long long v = read_int();
      HODGE_REQUIRE(v >= 0 && v < nv, ErrorCode::Parse, "cell vertex index out of range");
      c[i] = static_cast<int>(v);
    }
  }
  std::vector<std::pair<long long, int>> bnd;
  if (is >> key)
  {
    HODGE_REQUIRE(key == "boundary", ErrorCode::Parse, "expected 'boundary'");
    const long long nb = read_int();
    for (long long k = 0; k < nb; k++)
    {
      long long f = read_int();
      int t = static_cast<int>(read_int());
      bnd.emplace_back(f, t);
    }
  }

  // Structural checks run before the complex is built so each defect gets its own code.
  {
    std::vector<Simplex> keys(cells.size());
    for (std::size_t i = 0; i < cells.size(); i++)
    {
      keys[i] = sorted(cells[i], n);
      for (int a = 0; a < n; a++)
      {
        HODGE_REQUIRE(keys[i][a] != keys[i][a + 1], ErrorCode::DuplicateSimplex,
                      "cell repeats a vertex");
      }
    }
    std::sort(keys.begin(), keys.end());
    HODGE_REQUIRE(std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
                  ErrorCode::DuplicateSimplex, "cell listed twice");
  }
  for (std::size_t i = 0; i < cells.size(); i++)
  {
    HODGE_REQUIRE(signed_volume(n, verts, cells[i]) > 0.0, ErrorCode::InvertedSimplex,
                  fmt::format("cell {} has nonpositive volume", i));
  }
  SimplicialMesh mesh = SimplicialMesh::from_cells(n, std::move(verts), std::move(cells), {},
                                                   kOuter);
  validate(mesh);
  for (auto [f, t] : bnd)
  {
    HODGE_REQUIRE(f >= 0 && f < mesh.count(n - 1), ErrorCode::DanglingFace,
                  "boundary facet index out of range");
    mesh.set_boundary_tag(static_cast<int>(f), t);
  }
  return mesh;
}

SimplicialMesh import_mesh(const std::string &path)
{
  std::ifstream is(path);
  HODGE_REQUIRE(is, ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_mesh(ss.str());
}

void export_off(const SimplicialMesh &mesh, const std::string &path)
{
  std::ofstream os(path);
  HODGE_REQUIRE(os, ErrorCode::Io, "cannot open " + path);
  const int n = mesh.dim();
  std::vector<Simplex> faces;
  if (n == 2)
  {
    faces = mesh.cells();
  }
  else if (n == 3)
  {
    for (int f = 0; f < mesh.count(2); f++)
    {
      if (mesh.boundary_tags()[f] == kInterior)
      {
        continue;
      }
      int c = mesh.facet_cells()[f][0];
      const auto &fi = mesh.faces(3)[c];
      int i = static_cast<int>(std::find(fi.begin(), fi.end(), f) - fi.begin());
      Simplex t = drop(mesh.cells()[c], 3, i);
      if (((i % 2) ? -1 : 1) < 0)
      {
        std::swap(t[0], t[1]);
      }
      faces.push_back(t);
    }
  }
  os << "OFF\n" << mesh.count(0) << ' ' << faces.size() << " 0\n";
  for (const auto &v : mesh.vertices())
  {
    os << fmt::format("{:.17g} {:.17g} {:.17g}\n", v(0), v(1), v(2));
  }
  for (const auto &f : faces)
  {
    os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
}

}  // namespace hodge
