// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "hodge/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace hodge
{

namespace
{

constexpr double kPi = std::numbers::pi;

Point P(double x, double y) { return Point(x, y, 0.0); }

CurvePiece mirror_y(const CurvePiece &c)
{
  if (c.kind == CurvePiece::Kind::Line)
  {
    return CurvePiece::line(P(c.a(0), -c.a(1)), P(c.b(0), -c.b(1)));
  }
  return CurvePiece::arc(P(c.center(0), -c.center(1)), c.radius, -c.theta0,
                         -(c.theta0 + c.sweep));
}

// Reflection across the diagonal x = y.
CurvePiece swap_xy(const CurvePiece &c)
{
  if (c.kind == CurvePiece::Kind::Line)
  {
    return CurvePiece::line(P(c.a(1), c.a(0)), P(c.b(1), c.b(0)));
  }
  return CurvePiece::arc(P(c.center(1), c.center(0)), c.radius, kPi / 2 - c.theta0,
                         kPi / 2 - (c.theta0 + c.sweep));
}

double ipow(double x, int k)
{
  double r = 1.0;
  for (int i = 0; i < k; i++)
  {
    r *= x;
  }
  return r;
}

// Pieces of the upper boundary of the aeps shape from angle 0 on the shell (x2 = 0) over
// the apex to angle pi, counterclockwise.
std::vector<CurvePiece> aeps_upper(const AepsShape &sh)
{
  const double a = sh.a, s = sh.s, beta = std::asin(0.5 / a), d = sh.apex_radius;
  std::vector<CurvePiece> out;
  out.push_back(CurvePiece::arc(Point::Zero(), a, 0.0, beta));
  if (d > 0.0)
  {
    const double yt = sh.apex_center + d / (2 * a);
    out.push_back(CurvePiece::line(P(s, 0.5), P(d * s / a, yt)));
    out.push_back(CurvePiece::arc(P(0.0, sh.apex_center), d, beta, kPi - beta));
    out.push_back(CurvePiece::line(P(-d * s / a, yt), P(-s, 0.5)));
  }
  else
  {
    out.push_back(CurvePiece::line(P(s, 0.5), P(0.0, 2 * a * a)));
    out.push_back(CurvePiece::line(P(0.0, 2 * a * a), P(-s, 0.5)));
  }
  out.push_back(CurvePiece::arc(Point::Zero(), a, kPi - beta, kPi));
  return out;
}

std::vector<CurvePiece> reversed_mirror(const std::vector<CurvePiece> &pieces)
{
  // Mirrored pieces traversed in the opposite order and direction.
  std::vector<CurvePiece> out;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
  {
    CurvePiece m = mirror_y(*it);
    if (m.kind == CurvePiece::Kind::Line)
    {
      std::swap(m.a, m.b);
    }
    else
    {
      m.theta0 += m.sweep;
      m.sweep = -m.sweep;
    }
    out.push_back(m);
  }
  return out;
}

CurvePiece reversed(CurvePiece c)
{
  if (c.kind == CurvePiece::Kind::Line)
  {
    std::swap(c.a, c.b);
  }
  else
  {
    c.theta0 += c.sweep;
    c.sweep = -c.sweep;
  }
  return c;
}

SimplicialMesh mesh_profile(const BoundaryDescription &b, double h, const SizeField &size)
{
  Mesh2dOptions opt;
  opt.h = h;
  opt.size = size;
  return mesh2d(b, opt);
}

// Revolve about the x1-axis, then optionally rotate coordinates (x1, x2, x3) -> (x2, x3, x1)
// so that the axis becomes x3.
SimplicialMesh revolve_to(const SimplicialMesh &profile, int sectors, bool axis_last)
{
  SimplicialMesh m = revolve(profile, sectors);
  if (!axis_last)
  {
    return m;
  }
  std::vector<Point> v;
  v.reserve(m.count(0));
  for (const auto &x : m.vertices())
  {
    v.emplace_back(x(1), x(2), x(0));
  }
  std::unordered_map<Simplex, int, SimplexHash> tags;
  for (int f = 0; f < m.count(2); f++)
  {
    if (m.boundary_tags()[f] != kInterior)
    {
      tags[m.simplices(2)[f]] = m.boundary_tags()[f];
    }
  }
  return SimplicialMesh::from_cells(3, std::move(v), m.cells(), tags, kOuter);
}

double simpson(const std::function<double(double)> &f, double lo, double hi, int n)
{
  n += n % 2;
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; i++)
  {
    s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return s * h / 3.0;
}

}  // namespace

const char *to_string(FamilyId id)
{
  switch (id)
  {
  case FamilyId::Annulus:
    return "annulus";
  case FamilyId::Dumbbell:
    return "dumbbell";
  case FamilyId::Aeps:
    return "aeps";
  case FamilyId::MultiHoleAeps:
    return "multi_hole_aeps";
  }
  return "?";
}

FamilyId parse_family(const std::string &name)
{
  for (FamilyId id : {FamilyId::Annulus, FamilyId::Dumbbell, FamilyId::Aeps,
                      FamilyId::MultiHoleAeps})
  {
    if (name == to_string(id))
    {
      return id;
    }
  }
  throw Error(ErrorCode::Parse, "unknown family '" + name + "'");
}

void validate(const FamilySpec &spec)
{
  HODGE_REQUIRE(spec.n == 2 || spec.n == 3, ErrorCode::InvalidArgument, "n must be 2 or 3");
  switch (spec.id)
  {
  case FamilyId::Annulus:
    HODGE_REQUIRE(spec.hole_radius > 0.0 && spec.hole_radius < spec.outer_radius,
                  ErrorCode::InvalidArgument, "annulus needs 0 < hole radius < outer radius");
    break;
  case FamilyId::Dumbbell:
    HODGE_REQUIRE(spec.eps > 0.0 && spec.eps < 0.5, ErrorCode::InvalidArgument,
                  "dumbbell neck radius must lie in (0, 1/2)");
    break;
  case FamilyId::Aeps:
    HODGE_REQUIRE(spec.eps > 0.0 && spec.eps < 0.5, ErrorCode::InvalidArgument,
                  "eps must lie in (0, 1/2)");
    HODGE_REQUIRE(spec.p >= 0 && spec.p <= spec.n - 2, ErrorCode::InvalidArgument,
                  "aeps needs 0 <= p <= n - 2");
    break;
  case FamilyId::MultiHoleAeps:
    HODGE_REQUIRE(spec.eps > 0.0 && spec.eps < 0.5, ErrorCode::InvalidArgument,
                  "eps must lie in (0, 1/2)");
    HODGE_REQUIRE(spec.holes >= 1, ErrorCode::InvalidArgument, "need at least one hole");
    HODGE_REQUIRE(spec.extra_radius > 0.0, ErrorCode::InvalidArgument,
                  "extra hole radius must be positive");
    break;
  }
  HODGE_REQUIRE(spec.sectors >= 3, ErrorCode::InvalidArgument, "need at least 3 sectors");
}

std::string to_string(const FamilySpec &spec)
{
  switch (spec.id)
  {
  case FamilyId::Annulus:
    return fmt::format("annulus n={} R={} Rh={}", spec.n, spec.outer_radius, spec.hole_radius);
  case FamilyId::Dumbbell:
    return fmt::format("dumbbell n={} eps={}", spec.n, spec.eps);
  case FamilyId::Aeps:
    return fmt::format("aeps n={} p={} eps={}", spec.n, spec.p, spec.eps);
  case FamilyId::MultiHoleAeps:
    return fmt::format("multi_hole_aeps n={} p={} eps={} holes={} r={}", spec.n, spec.p,
                       spec.eps, spec.holes, spec.extra_radius);
  }
  return "?";
}

double cutoff(double r, double eps)
{
  const double t = std::clamp((r - eps / 3.0) / (eps / 3.0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

double cutoff_derivative(double r, double eps)
{
  const double t = (r - eps / 3.0) / (eps / 3.0);
  if (t <= 0.0 || t >= 1.0)
  {
    return 0.0;
  }
  return 6.0 * t * (1.0 - t) * 3.0 / eps;
}

int AepsShape::region(const Point &x) const
{
  const double rho = std::abs(x(0)), r = std::abs(x(1));
  const double R2 = rho * rho + r * r;
  if (R2 < 1.0)
  {
    return 0;
  }
  if (r <= 0.5)
  {
    return R2 <= a * a ? 1 : 0;
  }
  if (s * rho + r / 2 > a * a)
  {
    return 0;
  }
  if (apex_radius > 0.0 && r > apex_center + apex_radius / (2 * a))
  {
    return (rho * rho + (r - apex_center) * (r - apex_center) <= apex_radius * apex_radius) ? 2
                                                                                             : 0;
  }
  return 2;
}

AepsShape aeps_shape(int n, double eps, double apex_radius)
{
  HODGE_REQUIRE(n == 2 || n == 3, ErrorCode::InvalidArgument, "n must be 2 or 3");
  HODGE_REQUIRE(eps >= 0.0 && eps < 0.5, ErrorCode::InvalidArgument, "eps must lie in [0, 1/2)");
  AepsShape sh;
  sh.eps = eps;
  sh.n = n;
  sh.a = 1.0 + ipow(eps, n);
  sh.s = std::sqrt(sh.a * sh.a - 0.25);
  sh.apex_radius = apex_radius < 0.0 ? ipow(eps, n) / 10.0 : apex_radius;
  HODGE_REQUIRE(sh.apex_radius < 0.5, ErrorCode::InvalidArgument, "apex radius too large");
  sh.apex_center = 2.0 * (sh.a * sh.a - sh.a * sh.apex_radius);
  return sh;
}

BoundaryDescription aeps_boundary(int n, double eps, double apex_radius)
{
  HODGE_REQUIRE(eps > 0.0 && eps < 0.5, ErrorCode::InvalidArgument, "eps must lie in (0, 1/2)");
  const AepsShape sh = aeps_shape(n, eps, apex_radius);
  BoundaryLoop outer;
  outer.tag = kOuter;
  outer.pieces = aeps_upper(sh);
  for (const auto &c : reversed_mirror(aeps_upper(sh)))
  {
    // Lower half runs from angle pi back to 2 pi.
    outer.pieces.push_back(c);
  }
  check_closed(outer);
  BoundaryDescription b;
  b.loops.push_back(outer);
  b.loops.push_back(circle_loop(Point::Zero(), 1.0, 1));
  return b;
}

BoundaryDescription aeps_limit_boundary(double cut)
{
  HODGE_REQUIRE(cut > 0.0 && cut < 0.3, ErrorCode::InvalidArgument, "cut must lie in (0, 0.3)");
  const double s = std::sqrt(0.75), y0 = 0.5 + cut;
  const double xc = std::sqrt(1.0 - y0 * y0), xl = (1.0 - y0 / 2) / s, th = std::asin(y0);
  BoundaryLoop top;
  top.tag = kOuter;
  top.pieces = {CurvePiece::line(P(xc, y0), P(xl, y0)), CurvePiece::line(P(xl, y0), P(0.0, 2.0)),
                CurvePiece::line(P(0.0, 2.0), P(-xl, y0)),
                CurvePiece::line(P(-xl, y0), P(-xc, y0)),
                CurvePiece::arc(Point::Zero(), 1.0, kPi - th, th)};
  check_closed(top);
  BoundaryLoop bottom;
  bottom.tag = kOuter;
  for (const auto &c : top.pieces)
  {
    bottom.pieces.push_back(mirror_y(c));
  }
  BoundaryDescription b;
  b.loops = {top, bottom};
  return b;
}

SizeField aeps_size_field(const FamilySpec &spec, double h)
{
  const double eps = spec.eps;
  const int n = spec.n, p = spec.p;
  // The cutoff variable in profile coordinates: the distance to the x1-axis for the planar
  // shape and the p = 1 revolution, the axial coordinate for the p = 0 revolution.
  const bool axial = (n == 3 && p == 0);
  return [eps, h, axial](const Point &x) {
    const double r = axial ? std::abs(x(0)) : std::abs(x(1));
    return std::min(h, eps / 12.0 + 0.3 * std::max(0.0, r - eps));
  };
}

SimplicialMesh aeps_mesh(const FamilySpec &spec, double h)
{
  validate(spec);
  HODGE_REQUIRE(spec.id == FamilyId::Aeps, ErrorCode::InvalidArgument, "not an aeps family");
  const SizeField size = aeps_size_field(spec, h);
  if (spec.n == 2)
  {
    return mesh_profile(aeps_boundary(2, spec.eps, spec.apex_radius), h, size);
  }
  const AepsShape sh = aeps_shape(spec.n, spec.eps, spec.apex_radius);
  BoundaryLoop loop;
  loop.tag = kOuter;
  if (spec.p == 1)
  {
    // Upper half of the planar shape, revolved about x1.
    loop.pieces.push_back(CurvePiece::line(P(1.0, 0.0), P(sh.a, 0.0)));
    for (const auto &c : aeps_upper(sh))
    {
      loop.pieces.push_back(c);
    }
    loop.pieces.push_back(CurvePiece::line(P(-sh.a, 0.0), P(-1.0, 0.0)));
    loop.pieces.push_back(CurvePiece::arc(Point::Zero(), 1.0, kPi, 0.0));
    check_closed(loop);
    BoundaryDescription b;
    b.loops.push_back(loop);
    return revolve_to(mesh_profile(b, h, size), spec.sectors, false);
  }
  // p = 0: right half x1 >= 0 in (X, Y), swapped to (axial, radial) = (Y, X).
  const double top = sh.apex_radius > 0.0 ? sh.apex_center + sh.apex_radius : 2 * sh.a * sh.a;
  std::vector<CurvePiece> right;
  right.push_back(CurvePiece::line(P(0.0, 1.0), P(0.0, top)));
  const auto upper = aeps_upper(sh);
  // Upper pieces from the apex down to angle 0, reversed.
  std::vector<CurvePiece> half;
  if (sh.apex_radius > 0.0)
  {
    half.push_back(CurvePiece::arc(P(0.0, sh.apex_center), sh.apex_radius, kPi / 2,
                                   std::asin(0.5 / sh.a)));
    half.push_back(reversed(upper[1]));
  }
  else
  {
    half.push_back(reversed(upper[1]));
  }
  half.push_back(reversed(upper[0]));
  for (const auto &c : half)
  {
    right.push_back(c);
  }
  for (auto it = half.rbegin(); it != half.rend(); ++it)
  {
    right.push_back(reversed(mirror_y(*it)));
  }
  right.push_back(CurvePiece::line(P(0.0, -top), P(0.0, -1.0)));
  right.push_back(CurvePiece::arc(Point::Zero(), 1.0, -kPi / 2, kPi / 2));
  for (auto &c : right)
  {
    c = swap_xy(c);
  }
  loop.pieces = right;
  check_closed(loop);
  BoundaryDescription b;
  b.loops.push_back(loop);
  return revolve_to(mesh_profile(b, h, size), spec.sectors, true);
}

DomainSpec aeps_domain(const FamilySpec &spec, int arc_samples)
{
  HODGE_REQUIRE(spec.n == 2, ErrorCode::InvalidArgument,
                "polygonal aeps domain is available for n = 2");
  const AepsShape sh = aeps_shape(spec.n, spec.eps, spec.apex_radius);
  const double thick = sh.a - 1.0;
  const double beta = std::asin(0.5 / sh.a);
  // Keep the chord sag of the shell arcs below a quarter of the shell thickness.
  const double max_step = 2.0 * std::acos(1.0 - thick / (4.0 * sh.a));
  const int shell = std::max(arc_samples, static_cast<int>(std::ceil(2 * beta / max_step)) + 1);
  BoundaryDescription b = aeps_boundary(spec.n, spec.eps, spec.apex_radius);
  std::vector<Point> verts;
  for (const auto &c : b.loops[0].pieces)
  {
    if (c.kind == CurvePiece::Kind::Line)
    {
      verts.push_back(c.start());
      continue;
    }
    const int m = c.radius < 0.5 ? std::max(3, arc_samples / 8) : shell;
    for (int k = 0; k < m - 1; k++)
    {
      verts.push_back(c.eval(c.length() * k / (m - 1)));
    }
  }
  std::vector<Point> uniq;
  for (const auto &v : verts)
  {
    if (uniq.empty() || (v - uniq.back()).norm() > 1e-9)
    {
      uniq.push_back(v);
    }
  }
  if ((uniq.front() - uniq.back()).norm() <= 1e-9)
  {
    uniq.pop_back();
  }
  DomainSpec d;
  d.n = 2;
  d.outer.kind = OuterBody::Kind::Polytope;
  d.outer.vertices = uniq;
  d.add_hole(Point::Zero(), 1.0);
  return d;
}

AnalyticForm harmonic_form(int n, int p)
{
  HODGE_REQUIRE(p >= 0 && p <= n - 1, ErrorCode::InvalidArgument, "need 0 <= p <= n - 1");
  AnalyticForm f;
  f.degree = p;
  f.dim = n;
  const int m = n - p - 1;
  const auto basis = form_basis(n, p);
  // term k of sum_k (-1)^k y_k dy_0 ^ .. (omit k) .. ^ dy_p lands on basis index slot[k].
  std::vector<int> slot(p + 1, -1);
  for (int k = 0; k <= p; k++)
  {
    std::vector<int> idx;
    for (int j = 0; j <= p; j++)
    {
      if (j != k)
      {
        idx.push_back(m + j);
      }
    }
    slot[k] = static_cast<int>(std::find(basis.begin(), basis.end(), idx) - basis.begin());
  }
  f.components = [n, p, m, slot, nb = basis.size()](const Point &x, double *c) {
    std::fill(c, c + nb, 0.0);
    double r2 = 0.0;
    for (int k = 0; k <= p; k++)
    {
      r2 += x(m + k) * x(m + k);
    }
    const double scale = std::pow(r2, -0.5 * (p + 1));
    for (int k = 0; k <= p; k++)
    {
      c[slot[k]] += ((k % 2) ? -1.0 : 1.0) * x(m + k) * scale;
    }
    (void)n;
  };
  f.singular = [p, m](const Point &x) {
    double r2 = 0.0;
    for (int k = 0; k <= p; k++)
    {
      r2 += x(m + k) * x(m + k);
    }
    return r2 == 0.0;
  };
  return f;
}

AnalyticForm test_form(int n, int p, double eps)
{
  HODGE_REQUIRE(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  const AnalyticForm h = harmonic_form(n, p);
  const int m = n - p - 1;
  const std::size_t nb = form_basis(n, p).size();
  AnalyticForm f;
  f.degree = p;
  f.dim = n;
  f.components = [h, m, p, eps, nb](const Point &x, double *c) {
    double r2 = 0.0;
    for (int k = 0; k <= p; k++)
    {
      r2 += x(m + k) * x(m + k);
    }
    const double chi = cutoff(std::sqrt(r2), eps);
    if (chi == 0.0)
    {
      std::fill(c, c + nb, 0.0);
      return;
    }
    h.components(x, c);
    for (std::size_t i = 0; i < nb; i++)
    {
      c[i] *= chi;
    }
  };
  return f;
}

namespace
{

struct DumbbellProfile
{
  double eps, f, cx, fy, xt;
  // Half-height of the planar dumbbell (or radius of the 3D one) at |x1| = u.
  double g(double u) const
  {
    double v = 0.0;
    const double du = u - 1.5;
    if (std::abs(du) <= 1.0)
    {
      v = std::sqrt(1.0 - du * du);
    }
    if (u <= cx)
    {
      v = std::max(v, eps);
    }
    else if (u <= xt)
    {
      const double w = u - cx;
      v = std::max(v, fy - std::sqrt(std::max(0.0, f * f - w * w)));
    }
    return v;
  }
};

DumbbellProfile dumbbell_profile(double eps)
{
  DumbbellProfile d;
  d.eps = eps;
  d.f = eps / 2;
  d.fy = eps + d.f;
  d.cx = 1.5 - std::sqrt((1 + d.f) * (1 + d.f) - d.fy * d.fy);
  d.xt = 1.5 + (d.cx - 1.5) / (1 + d.f);
  return d;
}

}  // namespace

bool DumbbellDomain::contains(const Point &x) const
{
  const auto prof = dumbbell_profile(eps);
  const double y = n == 2 ? std::abs(x(1)) : std::hypot(x(1), x(2));
  return y <= prof.g(std::abs(x(0)));
}

double DumbbellDomain::volume() const
{
  const auto prof = dumbbell_profile(eps);
  if (n == 2)
  {
    return 4.0 * simpson([&](double u) { return prof.g(u); }, 0.0, 2.5, 200000);
  }
  return 2.0 * kPi * simpson([&](double u) { return prof.g(u) * prof.g(u); }, 0.0, 2.5, 200000);
}

double DumbbellDomain::neck_volume() const
{
  const auto prof = dumbbell_profile(eps);
  if (n == 2)
  {
    return 4.0 * simpson([&](double u) { return prof.g(u); }, 0.0, 0.5, 20000);
  }
  return 2.0 * kPi * simpson([&](double u) { return prof.g(u) * prof.g(u); }, 0.0, 0.5, 20000);
}

DumbbellDomain dumbbell(int n, double eps)
{
  HODGE_REQUIRE(n == 2 || n == 3, ErrorCode::InvalidArgument, "n must be 2 or 3");
  HODGE_REQUIRE(eps > 0.0 && eps < 0.5, ErrorCode::InvalidArgument,
                "neck radius must lie in (0, 1/2)");
  const auto d = dumbbell_profile(eps);
  DumbbellDomain out;
  out.n = n;
  out.eps = eps;
  out.fillet = d.f;
  const double phi = std::atan2(d.fy, d.cx - 1.5);
  const double psi = std::atan2(-d.fy, 1.5 - d.cx);
  const Point cr = P(1.5, 0.0), cl = P(-1.5, 0.0);
  BoundaryLoop loop;
  loop.tag = kOuter;
  auto &pc = loop.pieces;
  if (n == 2)
  {
    pc.push_back(CurvePiece::arc(cr, 1.0, -phi, phi));
  }
  else
  {
    pc.push_back(CurvePiece::line(P(-2.5, 0.0), P(2.5, 0.0)));
    pc.push_back(CurvePiece::arc(cr, 1.0, 0.0, phi));
  }
  pc.push_back(CurvePiece::arc(P(d.cx, d.fy), d.f, psi, -kPi / 2));
  pc.push_back(CurvePiece::line(P(d.cx, eps), P(-d.cx, eps)));
  pc.push_back(CurvePiece::arc(P(-d.cx, d.fy), d.f, -kPi / 2, -kPi - psi));
  if (n == 2)
  {
    pc.push_back(CurvePiece::arc(cl, 1.0, kPi - phi, kPi + phi));
    pc.push_back(CurvePiece::arc(P(-d.cx, -d.fy), d.f, kPi + psi, kPi / 2));
    pc.push_back(CurvePiece::line(P(-d.cx, -eps), P(d.cx, -eps)));
    pc.push_back(CurvePiece::arc(P(d.cx, -d.fy), d.f, kPi / 2, -psi));
  }
  else
  {
    pc.push_back(CurvePiece::arc(cl, 1.0, kPi - phi, kPi));
  }
  check_closed(loop);
  out.boundary.loops.push_back(loop);
  return out;
}

SizeField dumbbell_size_field(double eps, double h)
{
  const auto d = dumbbell_profile(eps);
  const double half = d.xt;
  return [eps, h, half](const Point &x) {
    const double dx = std::max(0.0, std::abs(x(0)) - half);
    const double dist = std::hypot(dx, std::abs(x(1)));
    return std::min(h, eps / 4.0 + 0.3 * dist);
  };
}

SimplicialMesh dumbbell_mesh(const DumbbellDomain &d, double h, int sectors)
{
  const auto m = mesh_profile(d.boundary, h, dumbbell_size_field(d.eps, h));
  return d.n == 2 ? m : revolve_to(m, sectors, false);
}

MultiHoleDomain multi_hole_family(int n, int p, int holes, double eps, double r)
{
  HODGE_REQUIRE(n == 2 && p == 1, ErrorCode::InvalidArgument,
                "the built-in multi-hole family is planar with p = 1");
  HODGE_REQUIRE(holes >= 1, ErrorCode::InvalidArgument, "need at least one hole");
  HODGE_REQUIRE(r > 0.0 && r < 0.5, ErrorCode::InvalidArgument, "extra radius must lie in (0, 1/2)");
  MultiHoleDomain out;
  out.family.id = FamilyId::MultiHoleAeps;
  out.family.n = n;
  out.family.p = p;
  out.family.eps = eps;
  out.family.holes = holes;
  out.family.extra_radius = r;
  validate(out.family);
  const AepsShape sh = aeps_shape(n, eps);
  out.boundary = aeps_boundary(n, eps);
  out.spec = aeps_domain(out.family);
  const int extra = holes - 1;
  const int top = (extra + 1) / 2;
  if (extra > 0)
  {
    const double ylo = 1.0 + r;
    const double yt = sh.apex_center + sh.apex_radius / (2 * sh.a);
    const double yhi = std::min(2.0 * (sh.a * sh.a - sh.a * r), yt - r);
    const double gap = (yhi - ylo) / top;
    HODGE_REQUIRE(gap > 2.0 * r * 1.05, ErrorCode::Infeasible,
                  fmt::format("{} holes of radius {} do not fit in region II", extra, r));
    for (int i = 0; i < extra; i++)
    {
      const int k = i / 2;
      const double y = ylo + (k + 0.5) * gap;
      const Point c = P(0.0, i % 2 == 0 ? y : -y);
      out.spec.add_hole(c, r);
      out.boundary.loops.push_back(circle_loop(c, r, i + 2));
    }
  }
  validate(out.spec);
  return out;
}

SimplicialMesh multi_hole_mesh(const MultiHoleDomain &d, double h)
{
  FamilySpec f = d.family;
  f.p = 0;
  const SizeField base = aeps_size_field(f, h);
  const auto holes = d.spec.holes;
  const SizeField size = [base, holes](const Point &x) {
    double v = base(x);
    for (std::size_t i = 1; i < holes.size(); i++)
    {
      const double dist = std::max(0.0, (x - holes[i].center).norm() - holes[i].radius);
      v = std::min(v, holes[i].radius / 2.0 + 0.3 * dist);
    }
    return v;
  };
  return mesh_profile(d.boundary, h, size);
}

SimplicialMesh family_mesh(const FamilySpec &spec, double h)
{
  validate(spec);
  switch (spec.id)
  {
  case FamilyId::Annulus:
  {
    DomainSpec d = DomainSpec::ball(spec.n, Point::Zero(), spec.outer_radius);
    d.add_hole(Point::Zero(), spec.hole_radius);
    return mesh_domain(d, h);
  }
  case FamilyId::Dumbbell:
    return dumbbell_mesh(dumbbell(spec.n, spec.eps), h, spec.sectors);
  case FamilyId::Aeps:
    return aeps_mesh(spec, h);
  case FamilyId::MultiHoleAeps:
    return multi_hole_mesh(
      multi_hole_family(spec.n, spec.p, spec.holes, spec.eps, spec.extra_radius), h);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

std::optional<DomainSpec> family_domain(const FamilySpec &spec)
{
  validate(spec);
  switch (spec.id)
  {
  case FamilyId::Annulus:
  {
    DomainSpec d = DomainSpec::ball(spec.n, Point::Zero(), spec.outer_radius);
    d.add_hole(Point::Zero(), spec.hole_radius);
    return d;
  }
  case FamilyId::Dumbbell:
    return std::nullopt;
  case FamilyId::Aeps:
    if (spec.n != 2)
    {
      return std::nullopt;
    }
    return aeps_domain(spec);
  case FamilyId::MultiHoleAeps:
    return multi_hole_family(spec.n, spec.p, spec.holes, spec.eps, spec.extra_radius).spec;
  }
  return std::nullopt;
}

}  // namespace hodge
