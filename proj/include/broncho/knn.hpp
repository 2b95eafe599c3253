#pragma once

#include <span>
#include <vector>

#include "broncho/geometry.hpp"

namespace broncho {

/// For every point, the indices of its k nearest points including itself,
/// ordered by distance with ties broken by index. Uses a uniform grid.
std::vector<std::vector<int>> k_nearest(std::span<const Vec3> points, int k);

}  // namespace broncho
