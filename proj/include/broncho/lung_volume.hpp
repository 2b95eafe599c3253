#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "broncho/geometry.hpp"
#include "broncho/voxel_grid.hpp"

namespace broncho {

struct VoxelMask {
  VoxelGrid grid;
  std::vector<std::uint8_t> values;  // nonzero = inside

  bool at(int i, int j, int k) const { return values[grid.linear_index(i, j, k)] != 0; }
  std::size_t inside_count() const;
};

struct Ellipsoid {
  Vec3 center = Vec3::Zero();
  Vec3 semi_axes = Vec3::Ones();  // mm
};

/// Union of disjoint ellipsoids (e.g. a two-lung phantom).
struct EllipsoidUnion {
  std::vector<Ellipsoid> parts;
};

/// Host region for tree growth. Containment is closed (boundary points are
/// inside). Immutable after construction.
class LungVolume {
 public:
  using Shape = std::variant<VoxelMask, Ellipsoid, EllipsoidUnion>;

  explicit LungVolume(VoxelMask mask);
  explicit LungVolume(Ellipsoid ellipsoid);
  explicit LungVolume(EllipsoidUnion parts);

  const Shape& shape() const { return shape_; }

  bool contains(const Vec3& p) const;

  /// Axis-aligned box enclosing the region (tight around set voxels for masks).
  Aabb bounds() const;

  /// Ellipsoids analytically (union summed, parts assumed disjoint);
  /// masks as set-voxel count times voxel volume.
  double volume_mm3() const;

 private:
  Shape shape_;
};

bool ellipsoid_contains(const Ellipsoid& e, const Vec3& p);

/// `n` points uniformly distributed inside the volume by rejection sampling
/// from bounds(). Identical seeds give identical output. Throws DomainError
/// when the acceptance rate of the first 10000 candidates is below 1e-4.
std::vector<Vec3> sample_uniform(const LungVolume& volume, std::size_t n, std::uint64_t seed);

/// Two-lung phantom: two ellipsoids of semi-axes (45, 60, 100) mm centred at
/// x = -/+55 mm. Matches two_lung_seed_tree().
LungVolume two_ellipsoid_phantom();

}  // namespace broncho
