#pragma once

#include <optional>
#include <vector>

#include "broncho/tri_mesh.hpp"

namespace broncho {

struct RayHit {
  int face = -1;
  double t = 0.0;  // distance along the unit direction
};

/// Bounding-volume hierarchy over a mesh's triangles. Holds a reference to
/// the mesh, which must outlive it and stay unchanged.
class TriangleBvh {
 public:
  explicit TriangleBvh(const TriMesh& mesh);

  /// Nearest hit with t > t_min, ignoring `skip_face`.
  std::optional<RayHit> intersect(const Vec3& origin, const Vec3& direction, int skip_face = -1,
                                  double t_min = 1e-9) const;

 private:
  struct Node {
    Aabb box;
    int left = -1, right = -1;  // children, or -1 for a leaf
    int first = 0, count = 0;   // range in order_ for leaves
  };

  int build(int first, int count, int depth);

  const TriMesh& mesh_;
  std::vector<int> order_;
  std::vector<Aabb> face_box_;
  std::vector<Vec3> face_center_;
  std::vector<Node> nodes_;
};

/// Moller-Trumbore; returns t or nullopt when the ray misses the triangle.
std::optional<double> ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace broncho
