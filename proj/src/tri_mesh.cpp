#include "broncho/tri_mesh.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "broncho/errors.hpp"

namespace broncho {

FaceGeometry face_geometry(const TriMesh& mesh, int face) {
  const Face& f = mesh.faces.at(static_cast<std::size_t>(face));
  const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
  const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
  const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
  const Vec3 cr = (b - a).cross(c - a);
  const double area = 0.5 * cr.norm();
  if (!(area > kDegenerateArea)) throw DomainError("degenerate face " + std::to_string(face));
  return {(a + b + c) / 3.0, cr / (2.0 * area), area};
}

std::vector<FaceGeometry> all_face_geometry(const TriMesh& mesh) {
  std::vector<FaceGeometry> out;
  out.reserve(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) out.push_back(face_geometry(mesh, static_cast<int>(f)));
  return out;
}

void validate_mesh(const TriMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& v : mesh.vertices)
    if (!v.allFinite()) throw InputError("mesh has a non-finite vertex");
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    const Face& f = mesh.faces[i];
    for (int v : f)
      if (v < 0 || v >= nv) throw InputError("face " + std::to_string(i) + " has an out-of-range vertex index");
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw InputError("face " + std::to_string(i) + " repeats a vertex");
    try {
      face_geometry(mesh, static_cast<int>(i));
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  }
  if (!mesh.face_branch.empty() && mesh.face_branch.size() != mesh.faces.size())
    throw InputError("face branch labels do not match face count");
  if (!mesh.face_sdf.empty() && mesh.face_sdf.size() != mesh.faces.size())
    throw InputError("face SDF values do not match face count");
}

std::vector<EdgeInfo> mesh_edges(const TriMesh& mesh) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<EdgeInfo> edges;
  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
    const Face& f = mesh.faces[fi];
    for (int e = 0; e < 3; ++e) {
      const int a = std::min(f[e], f[(e + 1) % 3]);
      const int b = std::max(f[e], f[(e + 1) % 3]);
      auto [it, inserted] = index.emplace(edge_key(a, b), edges.size());
      if (inserted) edges.push_back({a, b, {}});
      edges[it->second].faces.push_back(static_cast<int>(fi));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeInfo& x, const EdgeInfo& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return edges;
}

bool is_closed(const TriMesh& mesh) {
  if (mesh.faces.empty()) return false;
  for (const auto& e : mesh_edges(mesh))
    if (e.faces.size() != 2) return false;
  return true;
}

long euler_characteristic(const TriMesh& mesh) {
  std::vector<bool> used(mesh.vertices.size(), false);
  for (const auto& f : mesh.faces)
    for (int v : f) used[static_cast<std::size_t>(v)] = true;
  const long v = static_cast<long>(std::count(used.begin(), used.end(), true));
  return v - static_cast<long>(mesh_edges(mesh).size()) + static_cast<long>(mesh.faces.size());
}

int connected_components(const TriMesh& mesh) {
  std::vector<int> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<bool> used(mesh.vertices.size(), false);
  for (const auto& f : mesh.faces) {
    for (int v : f) used[static_cast<std::size_t>(v)] = true;
    parent[static_cast<std::size_t>(find(f[1]))] = find(f[0]);
    parent[static_cast<std::size_t>(find(f[2]))] = find(f[0]);
  }
  int count = 0;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (used[v] && find(static_cast<int>(v)) == static_cast<int>(v)) ++count;
  return count;
}

double signed_volume(const TriMesh& mesh, const std::vector<Vec3>& vertices) {
  double vol = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3& a = vertices[static_cast<std::size_t>(f[0])];
    const Vec3& b = vertices[static_cast<std::size_t>(f[1])];
    const Vec3& c = vertices[static_cast<std::size_t>(f[2])];
    vol += a.dot(b.cross(c));
  }
  return vol / 6.0;
}

double signed_volume(const TriMesh& mesh) { return signed_volume(mesh, mesh.vertices); }

double mean_edge_length(const TriMesh& mesh) {
  const auto edges = mesh_edges(mesh);
  if (edges.empty()) throw InputError("mesh has no edges");
  double sum = 0.0;
  for (const auto& e : edges)
    sum += (mesh.vertices[static_cast<std::size_t>(e.a)] - mesh.vertices[static_cast<std::size_t>(e.b)]).norm();
  return sum / static_cast<double>(edges.size());
}

std::vector<std::vector<int>> vertex_neighbors(const TriMesh& mesh) {
  std::vector<std::vector<int>> nb(mesh.vertices.size());
  for (const auto& f : mesh.faces)
    for (int e = 0; e < 3; ++e) {
      nb[static_cast<std::size_t>(f[e])].push_back(f[(e + 1) % 3]);
      nb[static_cast<std::size_t>(f[e])].push_back(f[(e + 2) % 3]);
    }
  for (auto& list : nb) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nb;
}

std::vector<std::vector<int>> vertex_faces(const TriMesh& mesh) {
  std::vector<std::vector<int>> vf(mesh.vertices.size());
  for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi)
    for (int v : mesh.faces[fi]) vf[static_cast<std::size_t>(v)].push_back(static_cast<int>(fi));
  return vf;
}

std::vector<std::vector<int>> face_adjacency(const TriMesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.faces.size());
  for (const auto& e : mesh_edges(mesh))
    for (int f : e.faces)
      for (int g : e.faces)
        if (f != g) adj[static_cast<std::size_t>(f)].push_back(g);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<bool> boundary_vertices(const TriMesh& mesh) {
  std::vector<bool> out(mesh.vertices.size(), false);
  for (const auto& e : mesh_edges(mesh))
    if (e.faces.size() == 1) out[static_cast<std::size_t>(e.a)] = out[static_cast<std::size_t>(e.b)] = true;
  return out;
}

std::vector<double> one_ring_areas(const TriMesh& mesh, const std::vector<Vec3>& vertices) {
  std::vector<double> area(vertices.size(), 0.0);
  for (const auto& f : mesh.faces) {
    const Vec3& a = vertices[static_cast<std::size_t>(f[0])];
    const Vec3& b = vertices[static_cast<std::size_t>(f[1])];
    const Vec3& c = vertices[static_cast<std::size_t>(f[2])];
    const double fa = 0.5 * (b - a).cross(c - a).norm();
    for (int v : f) area[static_cast<std::size_t>(v)] += fa;
  }
  return area;
}

std::vector<Vec3> vertex_normals(const TriMesh& mesh) {
  std::vector<Vec3> n(mesh.vertices.size(), Vec3::Zero());
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Vec3 cr = (mesh.vertices[static_cast<std::size_t>(f[1])] - a).cross(mesh.vertices[static_cast<std::size_t>(f[2])] - a);
    for (int v : f) n[static_cast<std::size_t>(v)] += cr;
  }
  for (auto& v : n)
    if (v.norm() > 0.0) v.normalize();
  return n;
}

}  // namespace broncho
