#include "magnitude/hull.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "magnitude/core/errors.hpp"

namespace mag {

namespace {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

double extent(const PointCloud& points) {
  double scale = 0.0;
  for (std::size_t c = 0; c < points.dim(); ++c) {
    double lo = points.point(0)[c];
    double hi = lo;
    for (std::size_t i = 1; i < points.size(); ++i) {
      lo = std::min(lo, points.point(i)[c]);
      hi = std::max(hi, points.point(i)[c]);
    }
    scale = std::max(scale, hi - lo);
  }
  return scale;
}

struct Face {
  std::array<std::size_t, 3> v;
  Vec3 normal;  // unit, outward
  double offset;
};

}  // namespace

std::vector<Vec2> convex_hull_2d(const PointCloud& points) {
  if (points.dim() != 2) throw InvalidArgument("convex_hull_2d: points must be planar");
  std::vector<Vec2> p;
  p.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) p.push_back({points.point(i)[0], points.point(i)[1]});
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  const double eps = 1e-12 * extent(points) * extent(points);
  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p[i]) <= eps) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], p[i]) <= eps) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Triangle> convex_hull_3d(const PointCloud& points) {
  if (points.dim() != 3) throw InvalidArgument("convex_hull_3d: points must be in R^3");
  const std::size_t n = points.size();
  if (n < 4) return {};
  std::vector<Vec3> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {points.point(i)[0], points.point(i)[1], points.point(i)[2]};
  const double scale = extent(points);
  if (!(scale > 0.0)) return {};
  const double eps = 1e-10 * scale;

  // Initial simplex from extreme points.
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (p[i] < p[i0]) i0 = i;
  std::size_t i1 = i0;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (const double d = norm3(sub(p[i], p[i0])); d > best) best = d, i1 = i;
  if (best <= eps) return {};
  const Vec3 axis = sub(p[i1], p[i0]);
  std::size_t i2 = i0;
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (const double d = norm3(cross3(axis, sub(p[i], p[i0]))) / norm3(axis); d > best) best = d, i2 = i;
  if (best <= eps) return {};
  Vec3 plane = cross3(axis, sub(p[i2], p[i0]));
  plane = {plane[0] / norm3(plane), plane[1] / norm3(plane), plane[2] / norm3(plane)};
  std::size_t i3 = i0;
  best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (const double d = std::fabs(dot3(plane, sub(p[i], p[i0]))); d > best) best = d, i3 = i;
  if (best <= eps) return {};

  const Vec3 inside = {(p[i0][0] + p[i1][0] + p[i2][0] + p[i3][0]) / 4,
                       (p[i0][1] + p[i1][1] + p[i2][1] + p[i3][1]) / 4,
                       (p[i0][2] + p[i1][2] + p[i2][2] + p[i3][2]) / 4};

  auto make_face = [&](std::size_t a, std::size_t b, std::size_t c) {
    Vec3 nrm = cross3(sub(p[b], p[a]), sub(p[c], p[a]));
    const double len = norm3(nrm);
    nrm = {nrm[0] / len, nrm[1] / len, nrm[2] / len};
    Face f{{a, b, c}, nrm, dot3(nrm, p[a])};
    if (dot3(f.normal, inside) > f.offset) {
      std::swap(f.v[1], f.v[2]);
      f.normal = {-nrm[0], -nrm[1], -nrm[2]};
      f.offset = -f.offset;
    }
    return f;
  };

  std::vector<Face> faces = {make_face(i0, i1, i2), make_face(i0, i1, i3), make_face(i0, i2, i3),
                             make_face(i1, i2, i3)};

  for (std::size_t i = 0; i < n; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    std::vector<bool> visible(faces.size());
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      visible[f] = dot3(faces[f].normal, p[i]) - faces[f].offset > eps;
      any = any || visible[f];
    }
    if (!any) continue;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges.emplace(v[e], v[(e + 1) % 3]);
    }
    std::vector<Face> next;
    next.reserve(faces.size() + 8);
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (const auto& [u, w] : edges)
      if (!edges.contains({w, u})) next.push_back(make_face(u, w, i));
    faces = std::move(next);
  }

  std::vector<Triangle> out;
  out.reserve(faces.size());
  for (const Face& f : faces) out.push_back({p[f.v[0]], p[f.v[1]], p[f.v[2]]});
  return out;
}

double hull_volume(const PointCloud& points) {
  if (points.empty()) return 0.0;
  switch (points.dim()) {
    case 1: {
      const auto c = points.coords();
      const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
      return *hi - *lo;
    }
    case 2: {
      const auto h = convex_hull_2d(points);
      if (h.size() < 3) return 0.0;
      double a = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& u = h[i];
        const auto& v = h[(i + 1) % h.size()];
        a += u[0] * v[1] - u[1] * v[0];
      }
      return 0.5 * std::fabs(a);
    }
    case 3: {
      const auto tris = convex_hull_3d(points);
      if (tris.empty()) return 0.0;
      const Vec3 o = tris.front().a;
      double v = 0.0;
      for (const auto& t : tris) v += dot3(sub(t.a, o), cross3(sub(t.b, o), sub(t.c, o)));
      return std::fabs(v) / 6.0;
    }
    default:
      throw DimensionTooLarge("hull_volume supports dimensions 1 to 3, got " +
                              std::to_string(points.dim()));
  }
}

std::vector<Halfspace> halfspaces(const Polytope& polytope) {
  const PointCloud& v = polytope.vertices;
  std::vector<Halfspace> out;
  switch (polytope.dim) {
    case 1: {
      const auto c = v.coords();
      const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
      if (!(*hi > *lo)) throw InvalidArgument("halfspaces: degenerate segment");
      out.push_back({{1.0}, *hi});
      out.push_back({{-1.0}, -*lo});
      return out;
    }
    case 2: {
      const auto h = convex_hull_2d(v);
      if (h.size() < 3) throw InvalidArgument("halfspaces: degenerate polygon");
      for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        const double dx = b[0] - a[0];
        const double dy = b[1] - a[1];
        const double len = std::hypot(dx, dy);
        const std::vector<double> nrm = {dy / len, -dx / len};
        out.push_back({nrm, nrm[0] * a[0] + nrm[1] * a[1]});
      }
      return out;
    }
    case 3: {
      const auto tris = convex_hull_3d(v);
      if (tris.empty()) throw InvalidArgument("halfspaces: degenerate polyhedron");
      for (const auto& t : tris) {
        Vec3 nrm = cross3(sub(t.b, t.a), sub(t.c, t.a));
        const double len = norm3(nrm);
        nrm = {nrm[0] / len, nrm[1] / len, nrm[2] / len};
        out.push_back({{nrm[0], nrm[1], nrm[2]}, dot3(nrm, t.a)});
      }
      return out;
    }
    default:
      throw DimensionTooLarge("halfspaces supports dimensions 1 to 3");
  }
}

bool contains(const std::vector<Halfspace>& facets, std::span<const double> x, double tolerance) {
  for (const auto& h : facets) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) s += h.normal[c] * x[c];
    if (s > h.offset + tolerance) return false;
  }
  return true;
}

}  // namespace mag
