// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Conforming Delaunay refinement (Ruppert) with Bowyer-Watson insertion. Boundary
// subsegments remember their arc-length interval, so every split point is placed on the
// analytic curve rather than on the chord.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

#include "hodge/meshgen.hpp"
#include "predicates.hpp"

namespace hodge
{

namespace
{

using P2 = std::array<double, 2>;

std::uint64_t edge_key(int a, int b)
{
  if (a > b)
  {
    std::swap(a, b);
  }
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

class Refiner
{
public:
  Refiner(const BoundaryDescription &b, const Mesh2dOptions &opt) : B_(b), opt_(opt)
  {
    sin_min_ = std::sin(opt.min_angle_deg * std::numbers::pi / 180.0);
  }

  SimplicialMesh run();

private:
  struct Tri
  {
    std::array<int, 3> v;
    std::array<int, 3> nb;
    bool alive = true;
    bool interior = false;
  };
  struct Seg
  {
    int a, b, loop;
    double s0, s1;
    bool alive = true;
  };

  double size_at(const P2 &x) const
  {
    double s = opt_.h;
    if (opt_.size)
    {
      s = std::min(s, opt_.size(Point(x[0], x[1], 0.0)));
    }
    return s;
  }
  int orient(int a, int b, const P2 &x) const
  {
    return predicates::orient2d(P_[a].data(), P_[b].data(), x.data());
  }
  bool in_circle(int t, const P2 &x) const
  {
    const auto &v = T_[t].v;
    return predicates::incircle(P_[v[0]].data(), P_[v[1]].data(), P_[v[2]].data(), x.data()) > 0;
  }
  int segment_of(int a, int b) const
  {
    auto it = segmap_.find(edge_key(a, b));
    return it == segmap_.end() ? -1 : it->second;
  }
  bool encroaches(int s, const P2 &x) const
  {
    const P2 &a = P_[S_[s].a], &b = P_[S_[s].b];
    return (a[0] - x[0]) * (b[0] - x[0]) + (a[1] - x[1]) * (b[1] - x[1]) < 0.0;
  }

  int new_tri(int a, int b, int c, bool interior);
  int walk(const P2 &x, int t, int *crossed);
  std::vector<int> cavity(const P2 &x, int t0, bool block);
  int insert(const P2 &x, const std::vector<int> &cav);
  int find_edge(int a, int b) const;
  void check_segment(int s);
  void split_segment(int s);
  void fix_fan_sides(int a, int b);
  bool bad(int t) const;
  P2 circumcenter(int t) const;
  void queue_if_bad(int t);
  void classify();
  void discretize();
  void check_self_intersection() const;
  bool inside_segments(const P2 &x) const;
  void after_insert(int v);

  const BoundaryDescription &B_;
  Mesh2dOptions opt_;
  double sin_min_;
  std::vector<P2> P_;
  std::vector<Tri> T_;
  std::vector<int> free_;
  std::vector<int> vtri_;
  std::vector<Seg> S_;
  std::unordered_map<std::uint64_t, int> segmap_;
  std::deque<std::pair<int, bool>> segq_;  // (segment, split unconditionally)
  std::deque<std::pair<int, std::array<int, 3>>> badq_;
  std::vector<int> new_tris_;
  std::vector<int> mark_;
  int stamp_ = 0;
  int hint_ = 0;
  bool classified_ = false;
  std::vector<double> loop_len_;
};

int Refiner::new_tri(int a, int b, int c, bool interior)
{
  int t;
  if (!free_.empty())
  {
    t = free_.back();
    free_.pop_back();
  }
  else
  {
    t = static_cast<int>(T_.size());
    T_.emplace_back();
    mark_.push_back(0);
  }
  T_[t].v = {a, b, c};
  T_[t].nb = {-1, -1, -1};
  T_[t].alive = true;
  T_[t].interior = interior;
  return t;
}

int Refiner::walk(const P2 &x, int t, int *crossed)
{
  const std::size_t limit = 4 * T_.size() + 100;
  for (std::size_t step = 0;; step++)
  {
    HODGE_REQUIRE(step < limit && t >= 0, ErrorCode::QualityUnreachable,
                  "point location failed");
    bool moved = false;
    const int r = static_cast<int>(step % 3);
    for (int k = 0; k < 3; k++)
    {
      const int i = (k + r) % 3;
      const int a = T_[t].v[(i + 1) % 3], b = T_[t].v[(i + 2) % 3];
      if (orient(a, b, x) < 0)
      {
        if (crossed)
        {
          int s = segment_of(a, b);
          if (s >= 0)
          {
            *crossed = s;
            return t;
          }
        }
        t = T_[t].nb[i];
        moved = true;
        break;
      }
    }
    if (!moved)
    {
      return t;
    }
  }
}

std::vector<int> Refiner::cavity(const P2 &x, int t0, bool block)
{
  stamp_++;
  std::vector<int> cav = {t0};
  mark_[t0] = stamp_;
  for (std::size_t k = 0; k < cav.size(); k++)
  {
    const int t = cav[k];
    for (int i = 0; i < 3; i++)
    {
      const int u = T_[t].nb[i];
      if (u < 0 || mark_[u] == stamp_)
      {
        continue;
      }
      if (block && segment_of(T_[t].v[(i + 1) % 3], T_[t].v[(i + 2) % 3]) >= 0)
      {
        continue;
      }
      if (in_circle(u, x))
      {
        mark_[u] = stamp_;
        cav.push_back(u);
      }
    }
  }
  return cav;
}

int Refiner::insert(const P2 &x, const std::vector<int> &cav)
{
  const int p = static_cast<int>(P_.size());
  P_.push_back(x);
  vtri_.push_back(-1);
  struct Edge
  {
    int a, b, out;
    bool interior;
  };
  std::vector<Edge> edges;
  for (int t : cav)
  {
    for (int i = 0; i < 3; i++)
    {
      const int u = T_[t].nb[i];
      if (u >= 0 && mark_[u] == stamp_ && T_[u].alive)
      {
        continue;
      }
      edges.push_back({T_[t].v[(i + 1) % 3], T_[t].v[(i + 2) % 3], u, T_[t].interior});
    }
  }
  for (int t : cav)
  {
    T_[t].alive = false;
    mark_[t] = 0;
  }
  new_tris_.clear();
  std::unordered_map<int, int> by_first;
  for (const auto &e : edges)
  {
    const int t = new_tri(e.a, e.b, p, e.interior);
    T_[t].nb[2] = e.out;
    if (e.out >= 0)
    {
      auto &onb = T_[e.out].nb;
      for (int i = 0; i < 3; i++)
      {
        const auto &ov = T_[e.out].v;
        if ((ov[(i + 1) % 3] == e.b && ov[(i + 2) % 3] == e.a))
        {
          onb[i] = t;
        }
      }
    }
    by_first[e.a] = t;
    new_tris_.push_back(t);
  }
  for (int t : new_tris_)
  {
    const int b = T_[t].v[1];
    const int u = by_first.at(b);
    T_[t].nb[0] = u;
    T_[u].nb[1] = t;
  }
  for (int t : cav)
  {
    free_.push_back(t);
  }
  for (int t : new_tris_)
  {
    for (int v : T_[t].v)
    {
      vtri_[v] = t;
    }
  }
  hint_ = new_tris_.front();
  HODGE_REQUIRE(static_cast<int>(P_.size()) <= opt_.max_vertices, ErrorCode::QualityUnreachable,
                fmt::format("vertex budget {} exhausted", opt_.max_vertices));
  return p;
}

int Refiner::find_edge(int a, int b) const
{
  const int start = vtri_[a];
  int t = start;
  do
  {
    const auto &v = T_[t].v;
    int i = (v[0] == a) ? 0 : ((v[1] == a) ? 1 : 2);
    if (v[(i + 1) % 3] == b || v[(i + 2) % 3] == b)
    {
      return t;
    }
    t = T_[t].nb[(i + 1) % 3];
  } while (t >= 0 && t != start);
  return -1;
}

void Refiner::check_segment(int s)
{
  if (!S_[s].alive)
  {
    return;
  }
  const int a = S_[s].a, b = S_[s].b;
  const int t = find_edge(a, b);
  if (t < 0)
  {
    segq_.emplace_back(s, true);
    return;
  }
  const auto &v = T_[t].v;
  for (int i = 0; i < 3; i++)
  {
    if (v[i] != a && v[i] != b)
    {
      if (encroaches(s, P_[v[i]]))
      {
        segq_.emplace_back(s, true);
        return;
      }
      const int u = T_[t].nb[i];
      if (u >= 0)
      {
        for (int w : T_[u].v)
        {
          if (w != a && w != b && encroaches(s, P_[w]))
          {
            segq_.emplace_back(s, true);
            return;
          }
        }
      }
    }
  }
}

// The split point sits on the curve, off the old chord, so the fan triangle on the chord may
// switch sides. Each side of the new subsegments takes its flag from a triangle whose outer edge
// is not the old chord.
void Refiner::fix_fan_sides(int a, int b)
{
  std::vector<int> fan;
  int start = -1;
  for (int t : new_tris_)
  {
    if (T_[t].v[0] == a)
    {
      start = t;
    }
  }
  if (start < 0)
  {
    return;
  }
  int t = start;
  do
  {
    fan.push_back(t);
    t = T_[t].nb[0];
  } while (t != start && static_cast<int>(fan.size()) <= static_cast<int>(new_tris_.size()));
  std::array<std::vector<int>, 2> side;
  int g = 0;
  for (int u : fan)
  {
    if (T_[u].v[0] == b)
    {
      g = 1;
    }
    side[g].push_back(u);
  }
  std::array<int, 2> flag = {-1, -1};
  for (int k = 0; k < 2; k++)
  {
    for (int u : side[k])
    {
      const bool chord = (T_[u].v[0] == a && T_[u].v[1] == b) || (T_[u].v[0] == b && T_[u].v[1] == a);
      if (!chord)
      {
        flag[k] = T_[u].interior ? 1 : 0;
        break;
      }
    }
  }
  for (int k = 0; k < 2; k++)
  {
    if (flag[k] < 0)
    {
      flag[k] = flag[1 - k] < 0 ? 0 : 1 - flag[1 - k];
    }
    for (int u : side[k])
    {
      T_[u].interior = flag[k] == 1;
    }
  }
}

void Refiner::split_segment(int s)
{
  Seg seg = S_[s];
  const double L = loop_len_[seg.loop];
  const double sm = 0.5 * (seg.s0 + seg.s1);
  const Point m3 = B_.loops[seg.loop].eval(std::fmod(sm, L));
  const P2 m = {m3(0), m3(1)};
  segmap_.erase(edge_key(seg.a, seg.b));
  S_[s].alive = false;
  int start = find_edge(seg.a, seg.b);
  if (start < 0)
  {
    start = vtri_[seg.a];
  }
  const int t0 = walk(m, start, nullptr);
  for (int v : T_[t0].v)
  {
    HODGE_REQUIRE(P_[v] != m, ErrorCode::QualityUnreachable, "split point coincides with vertex");
  }
  const auto cav = cavity(m, t0, true);
  const int p = insert(m, cav);
  if (classified_)
  {
    fix_fan_sides(seg.a, seg.b);
  }
  const int s1 = static_cast<int>(S_.size());
  S_.push_back({seg.a, p, seg.loop, seg.s0, sm, true});
  S_.push_back({p, seg.b, seg.loop, sm, seg.s1, true});
  segmap_[edge_key(seg.a, p)] = s1;
  segmap_[edge_key(p, seg.b)] = s1 + 1;
  after_insert(p);
  check_segment(s1);
  check_segment(s1 + 1);
}

bool Refiner::bad(int t) const
{
  const auto &v = T_[t].v;
  const P2 &a = P_[v[0]], &b = P_[v[1]], &c = P_[v[2]];
  const double la = std::hypot(b[0] - c[0], b[1] - c[1]);
  const double lb = std::hypot(a[0] - c[0], a[1] - c[1]);
  const double lc = std::hypot(a[0] - b[0], a[1] - b[1]);
  const double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  const double R = la * lb * lc / (2.0 * area2);
  const double lmin = std::min({la, lb, lc}), lmax = std::max({la, lb, lc});
  if (lmin < 2.0 * R * sin_min_)
  {
    return true;
  }
  const P2 g = {(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0};
  return lmax > size_at(g);
}

P2 Refiner::circumcenter(int t) const
{
  const auto &v = T_[t].v;
  const P2 &a = P_[v[0]], &b = P_[v[1]], &c = P_[v[2]];
  const double bx = b[0] - a[0], by = b[1] - a[1];
  const double cx = c[0] - a[0], cy = c[1] - a[1];
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return {a[0] + (cy * b2 - by * c2) / d, a[1] + (bx * c2 - cx * b2) / d};
}

void Refiner::queue_if_bad(int t)
{
  if (classified_ && T_[t].alive && T_[t].interior && bad(t))
  {
    badq_.emplace_back(t, T_[t].v);
  }
}

void Refiner::after_insert(int p)
{
  for (int t : new_tris_)
  {
    const int s = segment_of(T_[t].v[0], T_[t].v[1]);
    if (s >= 0 && encroaches(s, P_[p]))
    {
      segq_.emplace_back(s, true);
    }
    queue_if_bad(t);
  }
}

bool Refiner::inside_segments(const P2 &x) const
{
  bool in = false;
  for (const auto &s : S_)
  {
    if (!s.alive)
    {
      continue;
    }
    const P2 &p = P_[s.a], &q = P_[s.b];
    if ((p[1] > x[1]) != (q[1] > x[1]))
    {
      const double xi = p[0] + (x[1] - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
      if (x[0] < xi)
      {
        in = !in;
      }
    }
  }
  return in;
}

void Refiner::classify()
{
  std::vector<int> comp(T_.size(), -1);
  int ncomp = 0;
  for (int t0 = 0; t0 < static_cast<int>(T_.size()); t0++)
  {
    if (!T_[t0].alive || comp[t0] >= 0)
    {
      continue;
    }
    std::vector<int> stack = {t0}, members;
    comp[t0] = ncomp;
    while (!stack.empty())
    {
      const int t = stack.back();
      stack.pop_back();
      members.push_back(t);
      for (int i = 0; i < 3; i++)
      {
        const int u = T_[t].nb[i];
        if (u < 0 || comp[u] >= 0 || segment_of(T_[t].v[(i + 1) % 3], T_[t].v[(i + 2) % 3]) >= 0)
        {
          continue;
        }
        comp[u] = ncomp;
        stack.push_back(u);
      }
    }
    const auto &v = T_[t0].v;
    const P2 g = {(P_[v[0]][0] + P_[v[1]][0] + P_[v[2]][0]) / 3.0,
                  (P_[v[0]][1] + P_[v[1]][1] + P_[v[2]][1]) / 3.0};
    const bool in = v[0] >= 3 && v[1] >= 3 && v[2] >= 3 && inside_segments(g);
    for (int t : members)
    {
      T_[t].interior = in;
    }
    ncomp++;
  }
  classified_ = true;
}

void Refiner::discretize()
{
  for (int l = 0; l < static_cast<int>(B_.loops.size()); l++)
  {
    const auto &loop = B_.loops[l];
    check_closed(loop);
    const double L = loop.length();
    loop_len_.push_back(L);
    std::vector<double> svals;
    double s0 = 0.0;
    for (const auto &piece : loop.pieces)
    {
      const double len = piece.length();
      const int m = 512;
      std::vector<double> cum(m + 1, 0.0);
      for (int k = 1; k <= m; k++)
      {
        const Point x = piece.eval(len * (k - 0.5) / m);
        cum[k] = cum[k - 1] + (len / m) / size_at({x(0), x(1)});
      }
      int nseg = static_cast<int>(std::ceil(cum[m] - 1e-9));
      if (piece.kind == CurvePiece::Kind::Arc)
      {
        nseg = std::max(nseg, static_cast<int>(std::ceil(std::abs(piece.sweep) / (std::numbers::pi / 8))));
      }
      nseg = std::max(nseg, 1);
      for (int j = 0; j < nseg; j++)
      {
        const double target = cum[m] * j / nseg;
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        int k = std::max(1, static_cast<int>(it - cum.begin()));
        const double f = (target - cum[k - 1]) / std::max(cum[k] - cum[k - 1], 1e-300);
        svals.push_back(s0 + len * (k - 1 + std::clamp(f, 0.0, 1.0)) / m);
      }
      s0 += len;
    }
    const int base = static_cast<int>(P_.size());
    const int nv = static_cast<int>(svals.size());
    HODGE_REQUIRE(nv >= 3, ErrorCode::InvalidArgument, "boundary loop too coarse");
    for (int j = 0; j < nv; j++)
    {
      const Point x = loop.eval(svals[j]);
      P_.push_back({x(0), x(1)});
      vtri_.push_back(-1);
    }
    for (int j = 0; j < nv; j++)
    {
      const double sb = (j + 1 < nv) ? svals[j + 1] : L;
      S_.push_back({base + j, base + (j + 1) % nv, l, svals[j], sb, true});
    }
  }
}

void Refiner::check_self_intersection() const
{
  std::vector<int> order(S_.size());
  for (std::size_t i = 0; i < S_.size(); i++)
  {
    order[i] = static_cast<int>(i);
  }
  auto xmin = [&](int s) { return std::min(P_[S_[s].a][0], P_[S_[s].b][0]); };
  auto xmax = [&](int s) { return std::max(P_[S_[s].a][0], P_[S_[s].b][0]); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return xmin(a) < xmin(b); });
  for (std::size_t i = 0; i < order.size(); i++)
  {
    const auto &s = S_[order[i]];
    for (std::size_t j = i + 1; j < order.size() && xmin(order[j]) <= xmax(order[i]); j++)
    {
      const auto &r = S_[order[j]];
      if (s.a == r.a || s.a == r.b || s.b == r.a || s.b == r.b)
      {
        continue;
      }
      const int o1 = orient(s.a, s.b, P_[r.a]), o2 = orient(s.a, s.b, P_[r.b]);
      const int o3 = orient(r.a, r.b, P_[s.a]), o4 = orient(r.a, r.b, P_[s.b]);
      if (o1 * o2 <= 0 && o3 * o4 <= 0 && !(o1 == 0 && o2 == 0))
      {
        throw Error(ErrorCode::BoundarySelfIntersection,
                    fmt::format("boundary segments {} and {} intersect", order[i], order[j]));
      }
    }
  }
}

SimplicialMesh Refiner::run()
{
  HODGE_REQUIRE(opt_.h > 0.0, ErrorCode::InvalidArgument, "h must be positive");
  HODGE_REQUIRE(!B_.loops.empty(), ErrorCode::InvalidArgument, "no boundary loops");
  // Three enclosing vertices first.
  P_.resize(3);
  vtri_.resize(3, -1);
  discretize();
  {
    double lo0 = 1e300, lo1 = 1e300, hi0 = -1e300, hi1 = -1e300;
    for (std::size_t i = 3; i < P_.size(); i++)
    {
      lo0 = std::min(lo0, P_[i][0]);
      hi0 = std::max(hi0, P_[i][0]);
      lo1 = std::min(lo1, P_[i][1]);
      hi1 = std::max(hi1, P_[i][1]);
    }
    const double cx = 0.5 * (lo0 + hi0), cy = 0.5 * (lo1 + hi1);
    const double R = 50.0 * std::max(hi0 - lo0, hi1 - lo1);
    P_[0] = {cx - R, cy - R};
    P_[1] = {cx + R, cy - R};
    P_[2] = {cx, cy + R};
  }
  check_self_intersection();
  const int t = new_tri(0, 1, 2, false);
  for (int v = 0; v < 3; v++)
  {
    vtri_[v] = t;
  }
  hint_ = t;

  // Insert the boundary vertices in random order.
  std::vector<int> order;
  for (int i = 3; i < static_cast<int>(P_.size()); i++)
  {
    order.push_back(i);
  }
  std::mt19937_64 rng(opt_.seed);
  std::shuffle(order.begin(), order.end(), rng);
  {
    // Insert existing coordinates: temporarily move them out and reinsert by index.
    std::vector<P2> pts = P_;
    const int nboundary = static_cast<int>(P_.size());
    P_.resize(3);
    vtri_.resize(3);
    std::vector<int> newid(nboundary, -1);
    for (int v = 0; v < 3; v++)
    {
      newid[v] = v;
    }
    for (int i : order)
    {
      const int t0 = walk(pts[i], hint_, nullptr);
      for (int v : T_[t0].v)
      {
        HODGE_REQUIRE(P_[v] != pts[i], ErrorCode::BoundarySelfIntersection,
                      "duplicate boundary vertex");
      }
      newid[i] = insert(pts[i], cavity(pts[i], t0, false));
    }
    for (auto &s : S_)
    {
      s.a = newid[s.a];
      s.b = newid[s.b];
    }
  }
  for (int s = 0; s < static_cast<int>(S_.size()); s++)
  {
    segmap_[edge_key(S_[s].a, S_[s].b)] = s;
  }
  for (int s = 0; s < static_cast<int>(S_.size()); s++)
  {
    check_segment(s);
  }
  auto drain_segments = [&]() {
    while (!segq_.empty())
    {
      const auto [s, force] = segq_.front();
      segq_.pop_front();
      if (!S_[s].alive)
      {
        continue;
      }
      if (!force)
      {
        const std::size_t before = segq_.size();
        check_segment(s);
        if (segq_.size() == before)
        {
          continue;
        }
        segq_.pop_back();
      }
      split_segment(s);
    }
  };
  drain_segments();
  classify();
  for (int t = 0; t < static_cast<int>(T_.size()); t++)
  {
    queue_if_bad(t);
  }
  while (!badq_.empty() || !segq_.empty())
  {
    if (!segq_.empty())
    {
      drain_segments();
      continue;
    }
    auto [t, verts] = badq_.front();
    badq_.pop_front();
    if (!T_[t].alive || T_[t].v != verts || !bad(t))
    {
      continue;
    }
    const P2 c = circumcenter(t);
    int crossed = -1;
    const int tc = walk(c, t, &crossed);
    if (crossed >= 0)
    {
      segq_.emplace_back(crossed, true);
      badq_.emplace_back(t, verts);
      continue;
    }
    const auto cav = cavity(c, tc, true);
    bool enc = false;
    for (int u : cav)
    {
      for (int i = 0; i < 3; i++)
      {
        const int s = segment_of(T_[u].v[(i + 1) % 3], T_[u].v[(i + 2) % 3]);
        if (s >= 0 && encroaches(s, c))
        {
          segq_.emplace_back(s, true);
          enc = true;
        }
      }
    }
    if (enc)
    {
      badq_.emplace_back(t, verts);
      continue;
    }
    bool dup = false;
    for (int v : T_[tc].v)
    {
      dup = dup || P_[v] == c;
    }
    if (dup)
    {
      continue;
    }
    const int p = insert(c, cav);
    after_insert(p);
  }

  // Collect interior triangles.
  std::vector<int> vmap(P_.size(), -1);
  std::vector<Point> verts;
  std::vector<Simplex> cells;
  for (const auto &tri : T_)
  {
    if (!tri.alive || !tri.interior)
    {
      continue;
    }
    Simplex c{-1, -1, -1, -1};
    for (int i = 0; i < 3; i++)
    {
      int &m = vmap[tri.v[i]];
      if (m < 0)
      {
        m = static_cast<int>(verts.size());
        verts.emplace_back(P_[tri.v[i]][0], P_[tri.v[i]][1], 0.0);
      }
      c[i] = m;
    }
    cells.push_back(c);
  }
  std::unordered_map<Simplex, int, SimplexHash> tags;
  for (const auto &s : S_)
  {
    if (s.alive && vmap[s.a] >= 0 && vmap[s.b] >= 0)
    {
      tags[sorted(make_simplex({vmap[s.a], vmap[s.b]}), 1)] = B_.loops[s.loop].tag;
    }
  }
  return SimplicialMesh::from_cells(2, std::move(verts), std::move(cells), tags, kOuter);
}

}  // namespace

SimplicialMesh mesh2d(const BoundaryDescription &boundary, const Mesh2dOptions &opt)
{
  Refiner r(boundary, opt);
  return r.run();
}

SimplicialMesh mesh2d(const BoundaryDescription &boundary, double h)
{
  Mesh2dOptions opt;
  opt.h = h;
  return mesh2d(boundary, opt);
}

BoundaryDescription boundary_of(const DomainSpec &spec)
{
  HODGE_REQUIRE(spec.n == 2, ErrorCode::InvalidArgument, "boundary_of needs a planar domain");
  validate(spec);
  BoundaryDescription b;
  if (spec.outer.kind == OuterBody::Kind::Ball)
  {
    b.loops.push_back(circle_loop(spec.outer.center, spec.outer.radius, kOuter));
  }
  else
  {
    auto hs = outer_halfspaces(spec);
    auto poly = clip_halfspaces(2, hs);
    b.loops.push_back(polygon_loop(poly.vertices, kOuter));
  }
  for (std::size_t i = 0; i < spec.holes.size(); i++)
  {
    b.loops.push_back(circle_loop(spec.holes[i].center, spec.holes[i].radius,
                                  static_cast<int>(i) + 1));
  }
  return b;
}

}  // namespace hodge
