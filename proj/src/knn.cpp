#include "broncho/knn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "broncho/errors.hpp"

namespace broncho {

std::vector<std::vector<int>> k_nearest(std::span<const Vec3> points, int k) {
  const int n = static_cast<int>(points.size());
  if (k < 1 || k > n) throw InputError("k_nearest: k must be in [1, point count]");

  Vec3 lo = points[0], hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1e-12);
  const double h = extent / std::max(1.0, std::cbrt(static_cast<double>(n)));
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) dims[a] = std::max(1, static_cast<int>(std::floor((hi[a] - lo[a]) / h)) + 1);

  auto cell_of = [&](const Vec3& p) {
    std::array<int, 3> c{};
    for (int a = 0; a < 3; ++a) c[a] = std::clamp(static_cast<int>(std::floor((p[a] - lo[a]) / h)), 0, dims[a] - 1);
    return c;
  };
  auto flat = [&](int i, int j, int l) {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(dims[0]) *
                                             (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * l);
  };
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]);
  for (int i = 0; i < n; ++i) {
    const auto c = cell_of(points[i]);
    cells[flat(c[0], c[1], c[2])].push_back(i);
  }
  const int max_ring = std::max({dims[0], dims[1], dims[2]});

  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> cand;
  for (int q = 0; q < n; ++q) {
    const Vec3& p = points[q];
    const auto c = cell_of(p);
    cand.clear();
    for (int r = 0; r <= max_ring; ++r) {
      for (int l = c[2] - r; l <= c[2] + r; ++l) {
        if (l < 0 || l >= dims[2]) continue;
        for (int j = c[1] - r; j <= c[1] + r; ++j) {
          if (j < 0 || j >= dims[1]) continue;
          for (int i = c[0] - r; i <= c[0] + r; ++i) {
            if (i < 0 || i >= dims[0]) continue;
            if (std::max({std::abs(i - c[0]), std::abs(j - c[1]), std::abs(l - c[2])}) != r) continue;
            for (int idx : cells[flat(i, j, l)]) cand.emplace_back((points[idx] - p).squaredNorm(), idx);
          }
        }
      }
      if (static_cast<int>(cand.size()) >= k) {
        std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
        const double kth = cand[static_cast<std::size_t>(k - 1)].first;
        const double reach = r * h;
        if (kth < reach * reach) break;
      }
    }
    std::sort(cand.begin(), cand.end());
    auto& row = out[static_cast<std::size_t>(q)];
    row.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) row.push_back(cand[static_cast<std::size_t>(i)].second);
  }
  return out;
}

}  // namespace broncho
