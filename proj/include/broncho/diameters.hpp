#pragma once

#include <vector>

#include "broncho/airway_tree.hpp"

namespace broncho {

enum class DiameterMode { PowerLaw, FlowSplit };

struct DiameterConfig {
  double d0_mm = 18.0;
  double exponent = 3.0;
  DiameterMode mode = DiameterMode::PowerLaw;
};

/// d_z = d0 * 2^(-z / n).
double power_law_diameter(double d0_mm, int generation, double exponent);

/// Power law: diameter from generation only. Flow split: the root gets d0
/// and each child gets d_parent * r^(1/n), r being the child's share of the
/// parent's terminal count, so children satisfy sum(d_i^n) = d_parent^n.
AirwayTree assign_diameters(const AirwayTree& tree, const DiameterConfig& config);

/// Number of terminal branches in each branch's subtree.
std::vector<int> subtree_terminal_counts(const AirwayTree& tree);

/// Diagnostic for the angle-diameter relation
/// d0^n / sin(t1 + t2) = d1^n / sin t1 = d2^n / sin t2: the largest
/// |a - b| / max(a, b) over the three quotients. Angles in degrees.
double kamiya_angle_residual(double d0, double d1, double d2, double theta1_deg, double theta2_deg,
                             double exponent);

}  // namespace broncho
