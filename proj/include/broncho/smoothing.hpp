#pragma once

#include <vector>

#include "broncho/tri_mesh.hpp"

namespace broncho {

inline constexpr double kTaubinLambda = 0.5;
inline constexpr double kTaubinMu = -0.53;

/// Alternating lambda / mu steps of the uniform umbrella operator.
/// lambda == 0 returns the mesh unchanged; otherwise 0 < lambda and
/// mu < -lambda are required. Boundary vertices never move. When `movable`
/// is given, only vertices flagged true move.
TriMesh taubin_smooth(const TriMesh& mesh, double lambda, double mu, int iterations,
                      const std::vector<bool>* movable = nullptr);

struct BilateralConfig {
  double sigma_m = 0.0;   // centroid-distance scale in mm; <= 0 means mean edge length
  double sigma_n = 0.35;  // normal-difference scale
  int zeta = 1;           // power of the row-normalised weight matrix
  int k_neighbors = 8;    // nearest centroids, the face itself included
  int iterations = 1;

  void validate(std::size_t face_count) const;
};

/// Filtered face normals for one round: kNN adjacency over centroids
/// weighted by exp(-|m_i - m_j|^2 / 2 sm^2) * exp(-|n_i - n_j|^2 / 2 sn^2),
/// row-normalised, applied zeta times, renormalised.
std::vector<Vec3> filter_face_normals(const TriMesh& mesh, const BilateralConfig& config);

/// Iterates filter_face_normals and the vertex update
/// v_i += 1/|F_i| sum_{j in F_i} n_j (n_j . (m_j - v_i)).
TriMesh bilateral_normal_filter(const TriMesh& mesh, const BilateralConfig& config,
                                const std::vector<bool>* movable = nullptr);

}  // namespace broncho
