#pragma once

#include <optional>
#include <span>
#include <vector>

#include "broncho/airway_tree.hpp"

namespace broncho {

/// A conducting airway: the maximal chain of segments between two
/// bifurcations (or a bifurcation and a terminal).
struct Airway {
  std::vector<int> segments;  // branch ids, proximal first
  int parent = -1;            // airway index
  int generation = 0;
  int horsfield = 1;
  int strahler = 1;
  double length = 0.0;              // mm, summed over segments
  std::optional<double> diameter;   // mm, length-weighted over segments
  std::optional<double> angle_deg;  // to the parent airway's last segment
};

std::vector<Airway> collect_airways(const AirwayTree& tree);

struct OrderRow {
  int key = 0;  // order or generation
  int count = 0;
  std::optional<double> mean_diameter;
  double mean_length = 0.0;
};

struct MorphometryTables {
  std::vector<OrderRow> horsfield;
  std::vector<OrderRow> strahler;
  std::vector<OrderRow> generation;
  std::vector<double> branching_angles_deg;
  std::vector<double> diameter_child_parent_ratios;
  int terminal_count = 0;
  int airway_count = 0;
};

/// Per-order and per-generation tables; never throws on a valid tree.
MorphometryTables tabulate_morphometry(const AirwayTree& tree);

struct MorphometrySummary {
  MorphometryTables tables;
  double rb_h = 0.0;
  double rb_s = 0.0;
  double rl_h = 0.0;
  double rl_s = 0.0;
  std::optional<double> rd_h;
  std::optional<double> rd_s;
  std::optional<double> mean_angle_deg;
  std::optional<double> std_angle_deg;
  std::optional<double> diameter_decline;  // mean child/parent diameter
  std::optional<double> diameter_decline_std;
  int terminal_count = 0;
};

/// Ratio 10^|slope| of the ordinary least-squares line through
/// (x, log10 y). Throws DomainError with fewer than two distinct x values.
double log_regression_ratio(std::span<const double> x, std::span<const double> y);

/// Strahler/Horsfield branching, diameter and length ratios plus angle and
/// diameter-decline statistics. Throws DomainError("ratio undefined") when
/// the tree has fewer than two Horsfield orders.
MorphometrySummary morphometry_summary(const AirwayTree& tree);

/// Sample mean and standard deviation (n - 1 denominator; 0 for n == 1).
std::pair<double, double> mean_and_std(std::span<const double> values);

}  // namespace broncho
