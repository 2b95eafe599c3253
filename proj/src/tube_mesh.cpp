#include "broncho/tube_mesh.hpp"

#include <cmath>

#include "broncho/errors.hpp"
#include "broncho/primitives.hpp"
#include "broncho/rng.hpp"

namespace broncho {

namespace {

std::pair<double, double> end_radii(const AirwayTree& tree, int b) {
  const Branch& br = tree.branch(b);
  if (!br.diameter) throw InputError("branch " + std::to_string(b) + " has no diameter");
  const int p = tree.parent(b);
  double tail = *br.diameter;
  if (p >= 0) {
    const auto& pd = tree.branch(p).diameter;
    if (!pd) throw InputError("branch " + std::to_string(p) + " has no diameter");
    tail = *pd;
  }
  return {0.5 * tail, 0.5 * *br.diameter};
}

}  // namespace

double tube_radius_at(const AirwayTree& tree, int branch_id, double t) {
  const auto [r0, r1] = end_radii(tree, branch_id);
  return r0 + t * (r1 - r0);
}

TriMesh synthesize_tube_mesh(const AirwayTree& tree, int circle_segments) {
  if (circle_segments < 6) throw InputError("circle segments must be at least 6");
  if (!tree.has_all_diameters()) throw InputError("tube mesh needs a diameter on every branch");
  TriMesh mesh;
  for (const auto& b : tree.branches()) {
    const auto [r0, r1] = end_radii(tree, b.id);
    const double edge = kPi * (r0 + r1) / circle_segments;
    const int rings = std::max(1, static_cast<int>(std::ceil(b.length / edge)));
    append_capped_frustum(mesh, tree.position(b.tail), tree.position(b.head), r0, r1, circle_segments, rings,
                          {b.id, b.id, b.id});
  }
  return mesh;
}

std::vector<Vec3> sample_surface_point_cloud(const AirwayTree& tree, double density, std::uint64_t seed) {
  if (!(density > 0.0)) throw InputError("point density must be positive");
  if (!tree.has_all_diameters()) throw InputError("point cloud needs a diameter on every branch");
  Rng rng(seed + seed_offset::kSurfaceSampling);

  struct Raw {
    Vec3 p;
    int branch;
  };
  std::vector<Raw> raw;
  for (const auto& b : tree.branches()) {
    const auto [r0, r1] = end_radii(tree, b.id);
    const Vec3 a = tree.position(b.tail);
    const Vec3 axis = b.direction;
    const Vec3 u = any_perpendicular(axis);
    const Vec3 w = axis.cross(u);
    const double slant = std::hypot(b.length, r1 - r0);
    const double area = kPi * (r0 + r1) * slant;
    const double expected = density * area;
    const auto count = static_cast<std::size_t>(std::floor(expected + rng.uniform()));
    const double rmax = std::max(r0, r1);
    for (std::size_t i = 0; i < count;) {
      // Rejection on t keeps the density uniform over the cone's surface.
      const double t = rng.uniform();
      const double r = r0 + t * (r1 - r0);
      if (rng.uniform() * rmax > r) continue;
      const double phi = 2.0 * kPi * rng.uniform();
      raw.push_back({a + t * b.length * axis + r * (std::cos(phi) * u + std::sin(phi) * w), b.id});
      ++i;
    }
  }

  std::vector<Vec3> out;
  out.reserve(raw.size());
  for (const auto& q : raw) {
    bool inside = false;
    for (const auto& b : tree.branches()) {
      if (b.id == q.branch) continue;
      const Vec3 a = tree.position(b.tail);
      const Vec3 c = tree.position(b.head);
      const auto [r0, r1] = end_radii(tree, b.id);
      const double rmax = std::max(r0, r1);
      if ((q.p - a).norm() > b.length + rmax && (q.p - c).norm() > b.length + rmax) continue;
      const double t = closest_segment_param(q.p, a, c);
      if (point_segment_distance(q.p, a, c) < r0 + t * (r1 - r0)) {
        inside = true;
        break;
      }
    }
    if (!inside) out.push_back(q.p);
  }
  return out;
}

}  // namespace broncho
