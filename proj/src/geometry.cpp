#include "sarsa_arena/geometry.hpp"

#include <algorithm>
#include <limits>

namespace sarsa_arena {

double distance_to_segment(Vec2 p, const Segment& s) {
  Vec2 d = s.b - s.a;
  double len2 = dot(d, d);
  double t = len2 > 0.0 ? std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0) : 0.0;
  return length(p - (s.a + d * t));
}

namespace {
int orientation(Vec2 a, Vec2 b, Vec2 c) {
  double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
  int o1 = orientation(s.a, s.b, t.a);
  int o2 = orientation(s.a, s.b, t.b);
  int o3 = orientation(t.a, t.b, s.a);
  int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

double segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({distance_to_segment(s.a, t), distance_to_segment(s.b, t),
                   distance_to_segment(t.a, s), distance_to_segment(t.b, s)});
}

bool segment_crosses_rect(const Segment& s, const Rect& r) {
  if (r.contains(s.a) || r.contains(s.b)) return true;
  const Vec2 c00{r.x0, r.y0}, c10{r.x1, r.y0}, c11{r.x1, r.y1}, c01{r.x0, r.y1};
  return segments_intersect(s, {c00, c10}) || segments_intersect(s, {c10, c11}) ||
         segments_intersect(s, {c11, c01}) || segments_intersect(s, {c01, c00});
}

std::optional<double> ray_hits_segment(Vec2 origin, Vec2 dir, const Segment& wall) {
  Vec2 e = wall.b - wall.a;
  double denom = cross(dir, e);
  if (denom == 0.0) return std::nullopt;
  Vec2 w = wall.a - origin;
  double t = cross(w, e) / denom;
  double u = cross(w, dir) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<double> ray_hits_cylinder(Vec3 origin, Vec3 dir, const Cylinder& c, double t_max) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Planar circle interval.
  double fx = origin.x - c.base.x;
  double fy = origin.y - c.base.y;
  double a = dir.x * dir.x + dir.y * dir.y;
  double b = 2.0 * (fx * dir.x + fy * dir.y);
  double cc = fx * fx + fy * fy - c.radius * c.radius;
  double t0 = -kInf, t1 = kInf;
  if (a == 0.0) {
    if (cc > 0.0) return std::nullopt;
  } else {
    double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    t0 = (-b - sq) / (2.0 * a);
    t1 = (-b + sq) / (2.0 * a);
  }
  // Vertical slab interval.
  double zlo = c.base.z, zhi = c.base.z + c.height;
  double s0 = -kInf, s1 = kInf;
  if (dir.z == 0.0) {
    if (origin.z < zlo || origin.z > zhi) return std::nullopt;
  } else {
    s0 = (zlo - origin.z) / dir.z;
    s1 = (zhi - origin.z) / dir.z;
    if (s0 > s1) std::swap(s0, s1);
  }
  double enter = std::max(t0, s0);
  double exit = std::min(t1, s1);
  if (enter > exit || exit < 0.0) return std::nullopt;
  double t = std::max(enter, 0.0);
  if (t > t_max) return std::nullopt;
  return t;
}

}  // namespace sarsa_arena
