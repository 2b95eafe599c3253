#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "broncho/geometry.hpp"

namespace broncho {

using Face = std::array<int, 3>;

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<int> face_branch;  // empty, or one label per face
  std::vector<double> face_sdf;  // empty, or one value per face

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
};

inline constexpr double kDegenerateArea = 1e-12;

struct FaceGeometry {
  Vec3 centroid;
  Vec3 normal;  // unit, (v1 - v0) x (v2 - v0)
  double area = 0.0;
};

/// Throws DomainError when the face area is <= kDegenerateArea.
FaceGeometry face_geometry(const TriMesh& mesh, int face);
std::vector<FaceGeometry> all_face_geometry(const TriMesh& mesh);

/// Index ranges, repeated vertices, degenerate faces and attribute sizes.
/// Throws InputError.
void validate_mesh(const TriMesh& mesh);

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

struct EdgeInfo {
  int a = 0, b = 0;            // a < b
  std::vector<int> faces;      // incident faces
};

/// Undirected edges sorted by (a, b).
std::vector<EdgeInfo> mesh_edges(const TriMesh& mesh);

/// Every edge has exactly two incident faces.
bool is_closed(const TriMesh& mesh);
long euler_characteristic(const TriMesh& mesh);
/// Components connected through shared vertices; unused vertices are ignored.
int connected_components(const TriMesh& mesh);

/// Sum over faces of v0 . (v1 x v2) / 6; positive for outward winding.
double signed_volume(const TriMesh& mesh);
double signed_volume(const TriMesh& mesh, const std::vector<Vec3>& vertices);
double mean_edge_length(const TriMesh& mesh);

/// Sorted unique neighbour lists.
std::vector<std::vector<int>> vertex_neighbors(const TriMesh& mesh);
std::vector<std::vector<int>> vertex_faces(const TriMesh& mesh);
/// Faces sharing an edge, sorted.
std::vector<std::vector<int>> face_adjacency(const TriMesh& mesh);
/// Vertices on an edge with a single incident face.
std::vector<bool> boundary_vertices(const TriMesh& mesh);
/// Sum of incident face areas per vertex.
std::vector<double> one_ring_areas(const TriMesh& mesh, const std::vector<Vec3>& vertices);

/// Per-vertex area-weighted normal, unit length.
std::vector<Vec3> vertex_normals(const TriMesh& mesh);

}  // namespace broncho
