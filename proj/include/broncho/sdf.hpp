#pragma once

#include <vector>

#include "broncho/tri_mesh.hpp"

namespace broncho {

struct SdfConfig {
  double cone_half_angle_deg = 60.0;
  int rays_per_face = 30;
  bool normalize = false;

  void validate() const;
};

/// Raw per-face shape diameter before post-processing; NaN where no ray
/// produced a usable hit. `faces`, when given, restricts the evaluation.
std::vector<double> raw_sdf(const TriMesh& mesh, const SdfConfig& config, const std::vector<int>* faces = nullptr);

/// Shape diameter per face: raw values, holes filled from edge neighbours,
/// one bilateral pass over a breadth-first window, optional [0, 1] scaling.
/// With `faces`, only those faces are computed (neighbourhoods stay inside
/// the subset) and the result is indexed like `faces`.
/// Throws InputError on an open mesh and DomainError when every ray misses.
std::vector<double> compute_sdf(const TriMesh& mesh, const SdfConfig& config, const std::vector<int>* faces = nullptr);

/// Window radius floor(sqrt(|F| / 2000)) + 1 for the smoothing pass.
int sdf_window(std::size_t face_count);

}  // namespace broncho
