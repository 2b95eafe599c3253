#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "broncho/airway_tree.hpp"
#include "broncho/rng.hpp"

namespace testing {

using broncho::AirwayTree;
using broncho::EdgeSpec;
using broncho::Node;
using broncho::NodeId;
using broncho::Vec3;

struct Topology {
  std::vector<Node> nodes;
  std::vector<EdgeSpec> edges;
};

// Trachea 0->1, then every head splits in two, `depth` levels below the trachea.
inline Topology complete_binary(int depth) {
  Topology t;
  t.nodes.push_back({0, Vec3(0, 0, 10)});
  t.nodes.push_back({1, Vec3(0, 0, 0)});
  t.edges.push_back({0, 1});
  std::vector<NodeId> frontier{1};
  NodeId next = 2;
  double len = 8.0;
  for (int level = 1; level <= depth; ++level) {
    std::vector<NodeId> grown;
    for (NodeId h : frontier) {
      const Vec3 base = t.nodes[static_cast<std::size_t>(h)].position;
      for (int side : {-1, 1}) {
        t.nodes.push_back({next, base + Vec3(side * len * 0.6, 0.3 * level, -len * 0.8)});
        t.edges.push_back({h, next});
        grown.push_back(next++);
      }
    }
    frontier = grown;
    len *= 0.8;
  }
  return t;
}

// Each internal node has one terminal child and one continuing child.
inline Topology caterpillar(int depth) {
  Topology t;
  t.nodes.push_back({0, Vec3(0, 0, 0)});
  t.nodes.push_back({1, Vec3(0, 0, -5)});
  t.edges.push_back({0, 1});
  NodeId spine = 1, next = 2;
  for (int i = 1; i <= depth; ++i) {
    const Vec3 base = t.nodes[static_cast<std::size_t>(spine)].position;
    t.nodes.push_back({next, base + Vec3(3, 0, -2)});
    t.edges.push_back({spine, next++});
    t.nodes.push_back({next, base + Vec3(0, 0, -5)});
    t.edges.push_back({spine, next});
    spine = next++;
  }
  return t;
}

// Random rooted tree with `n_branches` branches; node degrees vary, so
// pass-through nodes and trifurcations occur.
inline Topology random_topology(int n_branches, std::uint64_t seed) {
  broncho::Rng rng(seed);
  Topology t;
  t.nodes.push_back({0, Vec3(0, 0, 0)});
  t.nodes.push_back({1, Vec3(0, 0, -10)});
  t.edges.push_back({0, 1});
  for (int i = 1; i < n_branches; ++i) {
    const auto pick = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(t.nodes.size() - 1));
    const Vec3 base = t.nodes[pick].position;
    const Vec3 step(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-6, -1));
    const NodeId id = static_cast<NodeId>(t.nodes.size());
    t.nodes.push_back({id, base + step});
    t.edges.push_back({t.nodes[pick].id, id});
  }
  return t;
}

inline AirwayTree build(const Topology& t, NodeId root = 0) { return broncho::build_tree(t.nodes, t.edges, root); }

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("broncho_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
