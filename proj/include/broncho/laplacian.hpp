#pragma once

#include <Eigen/Sparse>

#include <vector>

#include "broncho/tri_mesh.hpp"

namespace broncho {

using SparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr double kCotangentClamp = 1e4;

/// Cotangent Laplacian: L_ij = cot a_ij + cot b_ij for each edge, L_ii = -sum_j L_ij.
/// Throws InputError on an edge shared by more than two faces.
SparseMatrix cotangent_laplacian(const TriMesh& mesh);
SparseMatrix cotangent_laplacian(const TriMesh& mesh, const std::vector<Vec3>& vertices);

/// delta = L * V, one row per vertex.
std::vector<Vec3> apply_laplacian(const SparseMatrix& L, const std::vector<Vec3>& vertices);

}  // namespace broncho
