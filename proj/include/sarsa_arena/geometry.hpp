#pragma once

#include <cmath>
#include <optional>

namespace sarsa_arena {

inline constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double d) { return d * kPi / 180.0; }
constexpr double rad_to_deg(double r) { return r * 180.0 / kPi; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) {
  double n = length(a);
  return n > 0.0 ? a * (1.0 / n) : Vec2{};
}
/// Rotated 90 degrees counter-clockwise: the left-hand side when looking along `a`.
inline Vec2 left_of(Vec2 a) { return {-a.y, a.x}; }
/// Heading of a direction in degrees, counter-clockwise from +x.
inline double heading_deg(Vec2 a) { return rad_to_deg(std::atan2(a.y, a.x)); }
inline Vec2 from_heading_deg(double deg) {
  return {std::cos(deg_to_rad(deg)), std::sin(deg_to_rad(deg))};
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  bool operator==(const Vec3&) const = default;

  Vec2 xy() const { return {x, y}; }
};

inline Vec3 lift(Vec2 p, double z) { return {p.x, p.y, z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double length(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) {
  double n = length(a);
  return n > 0.0 ? a * (1.0 / n) : Vec3{};
}

struct Segment {
  Vec2 a;
  Vec2 b;
  bool operator==(const Segment&) const = default;
};

/// Axis-aligned rectangle, x0 < x1 and y0 < y1.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Rect inflated(double m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
  bool operator==(const Rect&) const = default;
};

double distance_to_segment(Vec2 p, const Segment& s);
bool segments_intersect(const Segment& s, const Segment& t);
double segment_distance(const Segment& s, const Segment& t);
bool segment_crosses_rect(const Segment& s, const Rect& r);

/// Parameter t >= 0 at which the planar projection of `origin + t*dir` meets
/// the wall segment, if it does. `dir` need not be unit length.
std::optional<double> ray_hits_segment(Vec2 origin, Vec2 dir, const Segment& wall);

/// Upright cylinder standing on `base` (its centre at ground contact).
struct Cylinder {
  Vec3 base;
  double radius = 17.0;
  double height = 39.0;
};

/// Entry parameter t >= 0 of `origin + t*dir` into the cylinder, limited to
/// t <= t_max. An origin inside the cylinder returns 0.
std::optional<double> ray_hits_cylinder(Vec3 origin, Vec3 dir, const Cylinder& c, double t_max);

}  // namespace sarsa_arena
