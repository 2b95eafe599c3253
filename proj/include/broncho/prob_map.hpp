#pragma once

#include <filesystem>
#include <vector>

#include "broncho/airway_tree.hpp"
#include "broncho/voxel_grid.hpp"

namespace broncho {

struct ProbabilityVolume {
  VoxelGrid grid;
  std::vector<float> values;  // x-fastest
  int generation = -1;        // -1 when unknown (e.g. loaded from disk)
  double sigma_mm = 1.0;

  float at(int i, int j, int k) const { return values[grid.linear_index(i, j, k)]; }
};

/// Peak value 1 / (sigma * sqrt(2 pi)).
double gaussian_peak(double sigma_mm);

/// W_g(x) = peak * exp(-d^2 / (2 sigma^2)) with d the distance from the voxel
/// centre to the nearest segment of generation g. Stored as float.
ProbabilityVolume generation_probability_map(const AirwayTree& tree, int generation, const VoxelGrid& grid,
                                             double sigma_mm = 1.0);

/// Header plus float32 raw file (see volume_io.hpp).
void export_volume(const ProbabilityVolume& volume, const std::filesystem::path& header_path);
ProbabilityVolume load_probability_volume(const std::filesystem::path& header_path);

}  // namespace broncho
