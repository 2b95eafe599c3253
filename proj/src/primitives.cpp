#include "broncho/primitives.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

#include "broncho/errors.hpp"

namespace broncho {

void append_capped_frustum(TriMesh& mesh, const Vec3& tail, const Vec3& head, double tail_radius,
                           double head_radius, int segments, int axial_rings, const FrustumLabels& labels) {
  if (segments < 3) throw InputError("frustum needs at least 3 segments");
  if (axial_rings < 1) throw InputError("frustum needs at least 1 axial ring");
  if (!(tail_radius > 0.0 && head_radius > 0.0)) throw InputError("frustum radii must be positive");
  const Vec3 d = head - tail;
  if (!(d.norm() > 0.0)) throw InputError("frustum has zero length");
  const Vec3 axis = d.normalized();
  const Vec3 u = any_perpendicular(axis);
  const Vec3 w = axis.cross(u);  // u x w = axis

  const int base = static_cast<int>(mesh.vertices.size());
  for (int r = 0; r <= axial_rings; ++r) {
    const double s = static_cast<double>(r) / axial_rings;
    const Vec3 c = tail + s * d;
    const double rad = tail_radius + s * (head_radius - tail_radius);
    for (int k = 0; k < segments; ++k) {
      const double phi = 2.0 * kPi * k / segments;
      mesh.vertices.push_back(c + rad * (std::cos(phi) * u + std::sin(phi) * w));
    }
  }
  const int c_tail = static_cast<int>(mesh.vertices.size());
  mesh.vertices.push_back(tail);
  const int c_head = c_tail + 1;
  mesh.vertices.push_back(head);

  auto vid = [&](int ring, int k) { return base + ring * segments + (k % segments); };
  auto add = [&](int a, int b, int c, int label) {
    mesh.faces.push_back({a, b, c});
    mesh.face_branch.push_back(label);
  };
  for (int r = 0; r < axial_rings; ++r)
    for (int k = 0; k < segments; ++k) {
      add(vid(r, k), vid(r, k + 1), vid(r + 1, k + 1), labels.lateral);
      add(vid(r, k), vid(r + 1, k + 1), vid(r + 1, k), labels.lateral);
    }
  for (int k = 0; k < segments; ++k) add(c_tail, vid(0, k + 1), vid(0, k), labels.tail_cap);
  for (int k = 0; k < segments; ++k) add(c_head, vid(axial_rings, k), vid(axial_rings, k + 1), labels.head_cap);
}

TriMesh make_cylinder(double radius, double length, int segments, int axial_rings) {
  TriMesh m;
  append_capped_frustum(m, Vec3::Zero(), Vec3(0.0, 0.0, length), radius, radius, segments, axial_rings, {0, 1, 2});
  return m;
}

TriMesh make_icosphere(int subdivisions, double radius) {
  if (subdivisions < 0) throw InputError("subdivisions must be non-negative");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  m.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : m.vertices) v.normalize();
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const int id = static_cast<int>(m.vertices.size());
      m.vertices.push_back(
          (m.vertices[static_cast<std::size_t>(a)] + m.vertices[static_cast<std::size_t>(b)]).normalized());
      mid.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    m.faces = std::move(next);
  }
  if (signed_volume(m) < 0.0)
    for (auto& f : m.faces) std::swap(f[1], f[2]);
  for (auto& v : m.vertices) v *= radius;
  return m;
}

TriMesh make_cube(double side, int n) {
  if (n < 1) throw InputError("cube subdivision must be >= 1");
  if (!(side > 0.0)) throw InputError("cube side must be positive");
  TriMesh m;
  std::map<std::tuple<int, int, int>, int> index;  // lattice coordinates in [0, n]
  auto vertex = [&](int i, int j, int k) {
    auto [it, inserted] = index.emplace(std::make_tuple(i, j, k), static_cast<int>(m.vertices.size()));
    if (inserted) {
      const double h = side / n;
      m.vertices.emplace_back(-0.5 * side + i * h, -0.5 * side + j * h, -0.5 * side + k * h);
    }
    return it->second;
  };
  for (int axis = 0; axis < 3; ++axis) {
    for (int side_sel = 0; side_sel < 2; ++side_sel) {
      const int fixed = side_sel * n;
      const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      Vec3 outward = Vec3::Zero();
      outward[axis] = side_sel ? 1.0 : -1.0;
      auto lattice = [&](int p, int q) {
        int c[3];
        c[axis] = fixed;
        c[a1] = p;
        c[a2] = q;
        return vertex(c[0], c[1], c[2]);
      };
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Face f1{lattice(p, q), lattice(p + 1, q), lattice(p + 1, q + 1)};
          Face f2{lattice(p, q), lattice(p + 1, q + 1), lattice(p, q + 1)};
          for (Face* f : {&f1, &f2}) {
            const Vec3& v0 = m.vertices[static_cast<std::size_t>((*f)[0])];
            const Vec3 nrm = (m.vertices[static_cast<std::size_t>((*f)[1])] - v0)
                                 .cross(m.vertices[static_cast<std::size_t>((*f)[2])] - v0);
            if (nrm.dot(outward) < 0.0) std::swap((*f)[1], (*f)[2]);
            m.faces.push_back(*f);
          }
        }
    }
  }
  return m;
}

TriMesh make_grid(int nx, int ny, double spacing) {
  if (nx < 2 || ny < 2) throw InputError("grid needs at least 2 x 2 vertices");
  TriMesh m;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) m.vertices.emplace_back(i * spacing, j * spacing, 0.0);
  auto id = [&](int i, int j) { return j * nx + i; };
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

}  // namespace broncho
