#include "broncho/airway_tree.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "broncho/errors.hpp"

namespace broncho {

const Node& AirwayTree::node(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw InputError("unknown node id " + std::to_string(id));
  return nodes_[it->second];
}

std::vector<int> AirwayTree::terminal_branches() const {
  std::vector<int> out;
  for (const auto& b : branches_)
    if (children_[static_cast<std::size_t>(b.id)].empty()) out.push_back(b.id);
  return out;
}

bool AirwayTree::has_all_diameters() const {
  return std::all_of(branches_.begin(), branches_.end(),
                     [](const Branch& b) { return b.diameter.has_value(); });
}

int AirwayTree::max_generation() const {
  int g = 0;
  for (const auto& b : branches_) g = std::max(g, b.generation);
  return g;
}

AirwayTree AirwayTree::with_diameters(std::span<const double> diameters) const {
  if (diameters.size() != branches_.size())
    throw InputError("diameter count does not match branch count");
  AirwayTree copy = *this;
  for (std::size_t i = 0; i < diameters.size(); ++i) {
    if (!(diameters[i] > 0.0) || !std::isfinite(diameters[i]))
      throw InputError("branch " + std::to_string(i) + " has non-positive diameter");
    copy.branches_[i].diameter = diameters[i];
  }
  return copy;
}

AirwayTree AirwayTree::without_diameters() const {
  AirwayTree copy = *this;
  for (auto& b : copy.branches_) b.diameter.reset();
  return copy;
}

AirwayTree build_tree(std::span<const Node> nodes, std::span<const EdgeSpec> edges, NodeId root) {
  AirwayTree tree;
  tree.nodes_.assign(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    const Node& n = tree.nodes_[i];
    if (!n.position.allFinite())
      throw InputError("node " + std::to_string(n.id) + " has a non-finite position");
    if (!tree.node_index_.emplace(n.id, i).second)
      throw InputError("duplicate node id " + std::to_string(n.id));
  }
  if (!tree.node_index_.contains(root)) throw InputError("unknown root node " + std::to_string(root));

  const std::size_t n_nodes = tree.nodes_.size();
  std::vector<std::vector<std::pair<std::size_t, int>>> adjacency(n_nodes);  // (node index, edge)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto ti = tree.node_index_.find(edges[e].tail);
    auto hi = tree.node_index_.find(edges[e].head);
    if (ti == tree.node_index_.end() || hi == tree.node_index_.end())
      throw InputError("edge " + std::to_string(e) + " references an unknown node");
    if (ti->second == hi->second)
      throw InputError("edge " + std::to_string(e) + " is a self loop (cycle)");
    adjacency[ti->second].emplace_back(hi->second, static_cast<int>(e));
    adjacency[hi->second].emplace_back(ti->second, static_cast<int>(e));
  }
  if (edges.empty()) throw InputError("tree has no edges");

  const std::size_t root_idx = tree.node_index_.at(root);
  if (adjacency[root_idx].size() != 1)
    throw InputError("root node " + std::to_string(root) + " must have exactly one incident edge");

  // Breadth-first orientation; revisiting a node through a different edge is a cycle.
  tree.branches_.assign(edges.size(), Branch{});
  tree.parent_.assign(edges.size(), -1);
  tree.children_.assign(edges.size(), {});
  std::vector<int> incoming(n_nodes, -1);
  std::vector<bool> seen(n_nodes, false);
  std::vector<bool> edge_used(edges.size(), false);
  std::queue<std::size_t> queue;
  seen[root_idx] = true;
  queue.push(root_idx);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (auto [v, e] : adjacency[u]) {
      if (edge_used[static_cast<std::size_t>(e)]) continue;
      edge_used[static_cast<std::size_t>(e)] = true;
      if (seen[v]) throw InputError("edge list contains a cycle");
      seen[v] = true;
      incoming[v] = e;
      Branch& b = tree.branches_[static_cast<std::size_t>(e)];
      b.id = e;
      b.tail = tree.nodes_[u].id;
      b.head = tree.nodes_[v].id;
      const Vec3 delta = tree.nodes_[v].position - tree.nodes_[u].position;
      b.length = delta.norm();
      if (!(b.length > 0.0)) throw InputError("branch " + std::to_string(e) + " has zero length");
      b.direction = delta / b.length;
      b.generation = 0;
      const int parent = incoming[u];
      tree.parent_[static_cast<std::size_t>(e)] = parent;
      if (parent >= 0) tree.children_[static_cast<std::size_t>(parent)].push_back(e);
      tree.topo_.push_back(e);
      queue.push(v);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("graph is disconnected");

  for (auto& c : tree.children_) std::sort(c.begin(), c.end());
  tree.root_ = root;
  tree.root_branch_ = tree.topo_.front();
  const std::vector<int> gens = compute_generations(tree);
  for (auto& b : tree.branches_) b.generation = gens[static_cast<std::size_t>(b.id)];
  return tree;
}

std::vector<int> compute_generations(const AirwayTree& tree) {
  std::vector<int> gen(tree.branch_count(), 0);
  for (int b : tree.topological_order()) {
    const int p = tree.parent(b);
    if (p < 0) continue;
    const bool bifurcation = tree.children(p).size() >= 2;
    gen[static_cast<std::size_t>(b)] = gen[static_cast<std::size_t>(p)] + (bifurcation ? 1 : 0);
  }
  return gen;
}

double branching_angle(const Vec3& parent_direction, const Vec3& child_direction) {
  const double np = parent_direction.norm();
  const double nc = child_direction.norm();
  if (!(np > 0.0) || !(nc > 0.0)) throw InputError("branching angle of a zero-length vector");
  const double c = std::clamp(parent_direction.dot(child_direction) / (np * nc), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

AirwayTree prune_to_generation(const AirwayTree& tree, int max_generation) {
  if (max_generation < 0) throw InputError("prune generation must be >= 0");
  std::vector<EdgeSpec> edges;
  std::vector<Node> nodes;
  std::vector<bool> keep_node(tree.nodes().size(), false);
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) index.emplace(tree.nodes()[i].id, i);
  keep_node[index.at(tree.root())] = true;
  for (const auto& b : tree.branches()) {
    if (b.generation > max_generation) continue;
    edges.push_back({b.tail, b.head});
    keep_node[index.at(b.head)] = true;
  }
  for (std::size_t i = 0; i < tree.nodes().size(); ++i)
    if (keep_node[i]) nodes.push_back(tree.nodes()[i]);
  AirwayTree out = build_tree(nodes, edges, tree.root());
  std::vector<double> diam;
  bool all = true;
  for (const auto& b : tree.branches()) {
    if (b.generation > max_generation) continue;
    if (!b.diameter) all = false;
    diam.push_back(b.diameter.value_or(0.0));
  }
  return all ? out.with_diameters(diam) : out;
}

}  // namespace broncho
