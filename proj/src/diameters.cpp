#include "broncho/diameters.hpp"

#include <algorithm>
#include <cmath>

#include "broncho/errors.hpp"
#include "broncho/geometry.hpp"

namespace broncho {

double power_law_diameter(double d0_mm, int generation, double exponent) {
  if (!(d0_mm > 0.0)) throw InputError("d0 must be positive");
  if (!(exponent > 0.0)) throw InputError("diameter exponent must be positive");
  if (generation < 0) throw InputError("generation must be non-negative");
  return d0_mm * std::pow(2.0, -static_cast<double>(generation) / exponent);
}

std::vector<int> subtree_terminal_counts(const AirwayTree& tree) {
  std::vector<int> count(tree.branch_count(), 0);
  const auto order = tree.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& kids = tree.children(*it);
    int c = kids.empty() ? 1 : 0;
    for (int k : kids) c += count[static_cast<std::size_t>(k)];
    count[static_cast<std::size_t>(*it)] = c;
  }
  return count;
}

AirwayTree assign_diameters(const AirwayTree& tree, const DiameterConfig& config) {
  if (!(config.d0_mm > 0.0)) throw InputError("d0 must be positive");
  if (!(config.exponent > 0.0)) throw InputError("diameter exponent must be positive");
  std::vector<double> d(tree.branch_count(), 0.0);
  if (config.mode == DiameterMode::PowerLaw) {
    for (const auto& b : tree.branches())
      d[static_cast<std::size_t>(b.id)] = power_law_diameter(config.d0_mm, b.generation, config.exponent);
  } else {
    const auto terminals = subtree_terminal_counts(tree);
    for (int b : tree.topological_order()) {
      const int p = tree.parent(b);
      const auto bi = static_cast<std::size_t>(b);
      if (p < 0) {
        d[bi] = config.d0_mm;
        continue;
      }
      const auto pi = static_cast<std::size_t>(p);
      const double r = static_cast<double>(terminals[bi]) / static_cast<double>(terminals[pi]);
      d[bi] = d[pi] * std::pow(r, 1.0 / config.exponent);
    }
  }
  return tree.with_diameters(d);
}

double kamiya_angle_residual(double d0, double d1, double d2, double theta1_deg, double theta2_deg,
                             double exponent) {
  if (!(d0 > 0.0 && d1 > 0.0 && d2 > 0.0)) throw InputError("diameters must be positive");
  const double s1 = std::sin(deg_to_rad(theta1_deg));
  const double s2 = std::sin(deg_to_rad(theta2_deg));
  const double s0 = std::sin(deg_to_rad(theta1_deg + theta2_deg));
  if (s0 <= 1e-12 || s1 <= 1e-12 || s2 <= 1e-12) throw DomainError("branching angle sine is zero");
  const double q[3] = {std::pow(d0, exponent) / s0, std::pow(d1, exponent) / s1, std::pow(d2, exponent) / s2};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      worst = std::max(worst, std::abs(q[i] - q[j]) / std::max(q[i], q[j]));
  return worst;
}

}  // namespace broncho
