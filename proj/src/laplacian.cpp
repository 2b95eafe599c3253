#include "broncho/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "broncho/errors.hpp"

namespace broncho {

namespace {

double clamped_cot(const Vec3& e1, const Vec3& e2) {
  const double cross = e1.cross(e2).norm();
  const double dot = e1.dot(e2);
  if (cross <= 0.0) return dot >= 0.0 ? kCotangentClamp : -kCotangentClamp;
  return std::clamp(dot / cross, -kCotangentClamp, kCotangentClamp);
}

}  // namespace

SparseMatrix cotangent_laplacian(const TriMesh& mesh, const std::vector<Vec3>& vertices) {
  for (const auto& e : mesh_edges(mesh))
    if (e.faces.size() > 2)
      throw InputError("non-manifold edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");

  const auto n = static_cast<Eigen::Index>(vertices.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.faces.size() * 6);
  std::vector<double> diag(vertices.size(), 0.0);
  for (const auto& f : mesh.faces) {
    for (int c = 0; c < 3; ++c) {
      const int o = f[c], i = f[(c + 1) % 3], j = f[(c + 2) % 3];
      const Vec3& po = vertices[static_cast<std::size_t>(o)];
      const double w = clamped_cot(vertices[static_cast<std::size_t>(i)] - po,
                                   vertices[static_cast<std::size_t>(j)] - po);
      trips.emplace_back(i, j, w);
      trips.emplace_back(j, i, w);
      diag[static_cast<std::size_t>(i)] -= w;
      diag[static_cast<std::size_t>(j)] -= w;
    }
  }
  for (Eigen::Index v = 0; v < n; ++v) trips.emplace_back(v, v, diag[static_cast<std::size_t>(v)]);
  SparseMatrix L(n, n);
  L.setFromTriplets(trips.begin(), trips.end());
  return L;
}

SparseMatrix cotangent_laplacian(const TriMesh& mesh) { return cotangent_laplacian(mesh, mesh.vertices); }

std::vector<Vec3> apply_laplacian(const SparseMatrix& L, const std::vector<Vec3>& vertices) {
  Eigen::MatrixXd V(static_cast<Eigen::Index>(vertices.size()), 3);
  for (std::size_t i = 0; i < vertices.size(); ++i) V.row(static_cast<Eigen::Index>(i)) = vertices[i].transpose();
  const Eigen::MatrixXd D = L * V;
  std::vector<Vec3> out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) out[i] = D.row(static_cast<Eigen::Index>(i)).transpose();
  return out;
}

}  // namespace broncho
