#include "broncho/prob_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "broncho/errors.hpp"
#include "broncho/volume_io.hpp"

namespace broncho {

double gaussian_peak(double sigma_mm) { return 1.0 / (sigma_mm * std::sqrt(2.0 * kPi)); }

ProbabilityVolume generation_probability_map(const AirwayTree& tree, int generation, const VoxelGrid& grid,
                                             double sigma_mm) {
  grid.validate();
  if (!(sigma_mm > 0.0) || !std::isfinite(sigma_mm)) throw InputError("sigma must be positive");

  std::vector<const Branch*> selected;
  for (const auto& b : tree.branches())
    if (b.generation == generation) selected.push_back(&b);
  if (selected.empty()) throw DomainError("no branch of generation " + std::to_string(generation));

  const double peak = gaussian_peak(sigma_mm);
  // Beyond this distance the density is below 2^-151 and rounds to 0.0f.
  const double cutoff = sigma_mm * std::sqrt(2.0 * (std::log(peak) + 151.0 * std::log(2.0)));

  std::vector<double> dist(grid.voxel_count(), std::numeric_limits<double>::infinity());
  for (const Branch* b : selected) {
    const Vec3 a = tree.position(b->tail);
    const Vec3 c = tree.position(b->head);
    int lo[3], hi[3];
    bool empty = false;
    for (int ax = 0; ax < 3; ++ax) {
      const double mn = std::min(a[ax], c[ax]) - cutoff;
      const double mx = std::max(a[ax], c[ax]) + cutoff;
      const double flo = std::floor((mn - grid.origin[ax]) / grid.spacing[ax] - 0.5) - 1.0;
      const double fhi = std::ceil((mx - grid.origin[ax]) / grid.spacing[ax] - 0.5) + 1.0;
      lo[ax] = static_cast<int>(std::clamp(flo, 0.0, static_cast<double>(grid.dims[ax])));
      hi[ax] = static_cast<int>(std::clamp(fhi, -1.0, static_cast<double>(grid.dims[ax] - 1)));
      if (lo[ax] > hi[ax]) empty = true;
    }
    if (empty) continue;
    for (int k = lo[2]; k <= hi[2]; ++k)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int i = lo[0]; i <= hi[0]; ++i) {
          const std::size_t idx = grid.linear_index(i, j, k);
          dist[idx] = std::min(dist[idx], point_segment_distance(grid.voxel_center(i, j, k), a, c));
        }
  }

  ProbabilityVolume out{grid, std::vector<float>(grid.voxel_count(), 0.0f), generation, sigma_mm};
  const double inv = 1.0 / (2.0 * sigma_mm * sigma_mm);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!std::isfinite(dist[i])) continue;
    out.values[i] = static_cast<float>(peak * std::exp(-dist[i] * dist[i] * inv));
  }
  return out;
}

void export_volume(const ProbabilityVolume& volume, const std::filesystem::path& header_path) {
  volume.grid.validate();
  if (volume.values.size() != volume.grid.voxel_count()) throw InputError("value count does not match dims");
  write_volume_header(header_path, {volume.grid, VoxelType::F32});
  write_f32_raw(raw_path_for(header_path), volume.values);
}

ProbabilityVolume load_probability_volume(const std::filesystem::path& header_path) {
  const VolumeHeader h = read_volume_header(header_path);
  if (h.type != VoxelType::F32) throw InputError(header_path.string() + ": expected dtype f32");
  ProbabilityVolume out;
  out.grid = h.grid;
  out.values = read_f32_raw(raw_path_for(header_path), h.grid.voxel_count());
  return out;
}

}  // namespace broncho
