#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

#include "broncho/geometry.hpp"

namespace broncho {

/// Regular grid geometry. Voxel (i, j, k) covers
/// [origin + (i, j, k) * spacing, origin + (i+1, j+1, k+1) * spacing);
/// storage is x-fastest.
struct VoxelGrid {
  std::array<int, 3> dims{1, 1, 1};
  Vec3 spacing = Vec3::Ones();
  Vec3 origin = Vec3::Zero();

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
           static_cast<std::size_t>(dims[2]);
  }
  std::size_t linear_index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(k));
  }
  Vec3 voxel_center(int i, int j, int k) const {
    return origin + Vec3((i + 0.5) * spacing.x(), (j + 0.5) * spacing.y(), (k + 0.5) * spacing.z());
  }
  double voxel_volume() const { return spacing.x() * spacing.y() * spacing.z(); }

  /// Voxel containing p by floor((p - origin) / spacing); nullopt outside.
  std::optional<std::array<int, 3>> locate(const Vec3& p) const {
    std::array<int, 3> ijk{};
    for (int a = 0; a < 3; ++a) {
      const double f = std::floor((p[a] - origin[a]) / spacing[a]);
      if (!(f >= 0.0) || f >= dims[a]) return std::nullopt;
      ijk[a] = static_cast<int>(f);
    }
    return ijk;
  }

  /// Throws InputError unless dims > 0 and spacing > 0 and everything finite.
  void validate() const;
};

}  // namespace broncho
