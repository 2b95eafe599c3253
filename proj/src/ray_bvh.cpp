#include "broncho/ray_bvh.hpp"

#include <algorithm>
#include <cmath>

namespace broncho {

std::optional<double> ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = dir.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-300) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  return e2.dot(q) * inv;
}

TriangleBvh::TriangleBvh(const TriMesh& mesh) : mesh_(mesh) {
  const std::size_t nf = mesh.faces.size();
  order_.resize(nf);
  face_box_.resize(nf);
  face_center_.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    order_[f] = static_cast<int>(f);
    for (int v : mesh.faces[f]) face_box_[f].extend(mesh.vertices[static_cast<std::size_t>(v)]);
    face_center_[f] = face_box_[f].center();
  }
  if (nf > 0) {
    nodes_.reserve(2 * nf);
    build(0, static_cast<int>(nf), 0);
  }
}

int TriangleBvh::build(int first, int count, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Aabb box, centers;
  for (int i = first; i < first + count; ++i) {
    const auto f = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
    box.extend(face_box_[f]);
    centers.extend(face_center_[f]);
  }
  nodes_[static_cast<std::size_t>(id)].box = box;
  if (count <= 4 || depth > 60) {
    nodes_[static_cast<std::size_t>(id)].first = first;
    nodes_[static_cast<std::size_t>(id)].count = count;
    return id;
  }
  int axis = 0;
  centers.extent().maxCoeff(&axis);
  const int mid = first + count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + first + count, [&](int x, int y) {
    const double cx = face_center_[static_cast<std::size_t>(x)][axis];
    const double cy = face_center_[static_cast<std::size_t>(y)][axis];
    return cx != cy ? cx < cy : x < y;
  });
  const int left = build(first, mid - first, depth + 1);
  const int right = build(mid, first + count - mid, depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

namespace {

bool slab_hit(const Aabb& box, const Vec3& origin, const Vec3& inv_dir, double t_max) {
  double t0 = 0.0, t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    double tn = (box.lo[a] - origin[a]) * inv_dir[a];
    double tf = (box.hi[a] - origin[a]) * inv_dir[a];
    if (std::isnan(tn) || std::isnan(tf)) {  // 0 * inf: origin on the slab plane
      if (origin[a] < box.lo[a] || origin[a] > box.hi[a]) return false;
      continue;
    }
    if (tn > tf) std::swap(tn, tf);
    t0 = std::max(t0, tn);
    t1 = std::min(t1, tf);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

std::optional<RayHit> TriangleBvh::intersect(const Vec3& origin, const Vec3& direction, int skip_face,
                                             double t_min) const {
  if (nodes_.empty()) return std::nullopt;
  const Vec3 inv(1.0 / direction.x(), 1.0 / direction.y(), 1.0 / direction.z());
  std::optional<RayHit> best;
  double t_best = std::numeric_limits<double>::infinity();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (!slab_hit(n.box, origin, inv, t_best)) continue;
    if (n.left < 0) {
      for (int i = n.first; i < n.first + n.count; ++i) {
        const int f = order_[static_cast<std::size_t>(i)];
        if (f == skip_face) continue;
        const Face& tri = mesh_.faces[static_cast<std::size_t>(f)];
        const auto t = ray_triangle(origin, direction, mesh_.vertices[static_cast<std::size_t>(tri[0])],
                                    mesh_.vertices[static_cast<std::size_t>(tri[1])],
                                    mesh_.vertices[static_cast<std::size_t>(tri[2])]);
        if (t && *t > t_min && (*t < t_best || (*t == t_best && best && f < best->face))) {
          t_best = *t;
          best = RayHit{f, *t};
        }
      }
    } else {
      stack[top++] = n.left;
      stack[top++] = n.right;
    }
  }
  return best;
}

}  // namespace broncho
