#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "broncho/geometry.hpp"

namespace broncho {

using NodeId = std::int64_t;

struct Node {
  NodeId id = 0;
  Vec3 position = Vec3::Zero();  // mm
};

/// One straight segment of the airway tree, oriented away from the root.
struct Branch {
  int id = 0;
  NodeId tail = 0;
  NodeId head = 0;
  int generation = 0;
  std::optional<double> diameter;  // mm
  double length = 0.0;             // mm
  Vec3 direction = Vec3::UnitZ();  // unit, tail -> head
};

struct EdgeSpec {
  NodeId tail = 0;
  NodeId head = 0;
};

/// Rooted directed tree of straight segments.
///
/// Branch ids are dense indices 0..n-1 equal to the position of the edge in
/// the list the tree was built from. Generations are computed at
/// construction: the root branch is generation 0 and a child is one
/// generation deeper only when its parent node is a bifurcation (two or more
/// children). Pass-through nodes keep the generation.
class AirwayTree {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t branch_count() const { return branches_.size(); }
  NodeId root() const { return root_; }
  int root_branch() const { return root_branch_; }

  const Branch& branch(int id) const { return branches_.at(static_cast<std::size_t>(id)); }
  const Node& node(NodeId id) const;
  bool has_node(NodeId id) const { return node_index_.contains(id); }
  const Vec3& position(NodeId id) const { return node(id).position; }

  /// Parent branch id or -1 for the root branch.
  int parent(int branch_id) const { return parent_.at(static_cast<std::size_t>(branch_id)); }
  const std::vector<int>& children(int branch_id) const {
    return children_.at(static_cast<std::size_t>(branch_id));
  }
  bool is_terminal(int branch_id) const { return children(branch_id).empty(); }

  /// Branch ids ordered so that every parent precedes its children.
  const std::vector<int>& topological_order() const { return topo_; }

  std::vector<int> terminal_branches() const;
  bool has_all_diameters() const;
  int max_generation() const;

  /// Copy with per-branch diameters replaced (indexed by branch id).
  AirwayTree with_diameters(std::span<const double> diameters) const;
  AirwayTree without_diameters() const;

 private:
  friend AirwayTree build_tree(std::span<const Node>, std::span<const EdgeSpec>, NodeId);

  std::vector<Node> nodes_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::vector<Branch> branches_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> topo_;
  NodeId root_ = 0;
  int root_branch_ = 0;
};

/// Orients an undirected edge list away from `root` and validates it.
///
/// Edge i becomes branch i. Throws InputError for unknown root, duplicate
/// node ids, non-finite positions, zero-length edges, cycles, disconnected
/// graphs, or a root that does not have exactly one incident edge.
AirwayTree build_tree(std::span<const Node> nodes, std::span<const EdgeSpec> edges, NodeId root);

/// Per-branch Weibel generation (bifurcation count from the root branch).
std::vector<int> compute_generations(const AirwayTree& tree);

/// Horsfield order: terminals are 1, a parent is max(child) + 1.
/// Single-child (pass-through) parents take the child's order.
std::vector<int> compute_horsfield_orders(const AirwayTree& tree);

/// Strahler order: terminals are 1, a parent takes max(child) and is
/// incremented only when the two largest child orders are equal.
std::vector<int> compute_strahler_orders(const AirwayTree& tree);

/// Angle in degrees between two direction vectors. Throws InputError on a
/// zero-length vector.
double branching_angle(const Vec3& parent_direction, const Vec3& child_direction);

/// Branches kept when cutting the tree after `max_generation`.
AirwayTree prune_to_generation(const AirwayTree& tree, int max_generation);

/// Inlet of an undirected skeleton: the leaf ending the longest unbranched
/// chain that starts at a branch point (degree >= 3). Chain length is the
/// summed Euclidean edge length; ties go to the lowest leaf id. Graphs
/// without branch points return the lower-id end of the path.
NodeId detect_root(std::span<const Node> nodes, std::span<const EdgeSpec> edges);

}  // namespace broncho
