#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace broncho {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Parameter in [0, 1] of the point on segment [a, b] closest to p.
inline double closest_segment_param(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return 0.0;
  return std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
}

inline double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const double t = closest_segment_param(p, a, b);
  return ((p - a) - t * (b - a)).norm();
}

/// Unit vector perpendicular to a nonzero vector; deterministic for a given input.
inline Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 a = v.cwiseAbs();
  Vec3 axis = Vec3::UnitX();
  if (a.y() <= a.x() && a.y() <= a.z()) axis = Vec3::UnitY();
  else if (a.z() <= a.x() && a.z() <= a.y()) axis = Vec3::UnitZ();
  return v.cross(axis).normalized();
}

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void extend(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void extend(const Aabb& o) {
    lo = lo.cwiseMin(o.lo);
    hi = hi.cwiseMax(o.hi);
  }
  bool empty() const { return (lo.array() > hi.array()).any(); }
  Vec3 center() const { return 0.5 * (lo + hi); }
  Vec3 extent() const { return hi - lo; }
};

}  // namespace broncho
