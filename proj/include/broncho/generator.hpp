#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "broncho/airway_tree.hpp"
#include "broncho/lung_volume.hpp"

namespace broncho {

struct SplitPlane {
  Vec3 point = Vec3::Zero();   // centre of mass of the split set
  Vec3 normal = Vec3::UnitX();  // unit
};

struct GeneratorConfig {
  std::size_t n_points = 30000;
  double branch_fraction = 0.40;
  double terminal_length_mm = 2.0;
  double angle_limit_deg = 60.0;
  std::size_t min_points_per_region = 1;
  int max_generations = 17;
  std::uint64_t rng_seed = 1;

  /// Throws InputError when a field violates its range.
  void validate() const;
};

Vec3 center_of_mass(std::span<const Vec3> points);

/// Splitting plane through the centre of mass. The normal is d x (d x u),
/// with u the principal axis of the point spread (the second axis when d is
/// parallel to the first), normalised and signed so its first nonzero
/// component is positive. Throws DomainError on degenerate spread.
SplitPlane pca_split_plane(std::span<const Vec3> points, const Vec3& distal_direction);

/// Points with signed distance >= 0 go to the first set.
std::pair<std::vector<Vec3>, std::vector<Vec3>> split_points(std::span<const Vec3> points,
                                                             const SplitPlane& plane);
/// Index form of split_points.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::span<const Vec3> points, std::span<const std::size_t> subset, const SplitPlane& plane);

/// End point of a new branch from `seed_endpoint` toward `target_centroid`,
/// branch_fraction of the way, rotated toward the parent direction when the
/// branching angle exceeds the limit (length preserved).
Vec3 grow_branch(const Vec3& seed_endpoint, const Vec3& parent_direction, const Vec3& target_centroid,
                 const GeneratorConfig& config);

enum class TerminalReason { Seed, Length, Points, BifurcationCap, Degenerate };

struct GenerationResult {
  AirwayTree tree;
  /// Indexed by branch id of `tree`; meaningful for terminal branches.
  std::vector<TerminalReason> terminal_reason;
  std::size_t seed_branch_count = 0;  // branches [0, seed_branch_count) come from the seed tree
  std::size_t bifurcations_added = 0;
};

/// Volume-filling growth of `seed_tree` inside `volume`.
///
/// Uniform seed points are assigned to the nearest distal branch. Distal
/// branches are expanded breadth-first in branch-id order: the branch's points
/// are split by pca_split_plane, one child grows toward each nonempty half,
/// and the half's points move to that child. A child whose end point leaves
/// the volume is shortened until it is inside. A branch is terminal when its
/// length is <= terminal_length_mm, it holds <= min_points_per_region points,
/// or the tree already has 2^(max_generations+1) distal branches.
GenerationResult generate(const AirwayTree& seed_tree, const LungVolume& volume, const GeneratorConfig& config);

/// Trachea plus two main bronchi ending inside two_ellipsoid_phantom().
AirwayTree two_lung_seed_tree();

}  // namespace broncho
