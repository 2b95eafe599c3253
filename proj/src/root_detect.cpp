#include <cmath>
#include <string>
#include <unordered_map>

#include "broncho/airway_tree.hpp"
#include "broncho/errors.hpp"

namespace broncho {

NodeId detect_root(std::span<const Node> nodes, std::span<const EdgeSpec> edges) {
  if (nodes.empty() || edges.empty()) throw InputError("root detection on an empty graph");
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id, i);
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto& e : edges) {
    auto a = index.find(e.tail);
    auto b = index.find(e.head);
    if (a == index.end() || b == index.end()) throw InputError("edge references an unknown node");
    adj[a->second].push_back(b->second);
    adj[b->second].push_back(a->second);
  }

  bool have = false;
  double best_len = 0.0;
  NodeId best_leaf = 0;
  auto consider = [&](double len, NodeId leaf) {
    const double tol = 1e-9 * std::max(1.0, std::max(len, best_len));
    if (!have || len > best_len + tol || (std::abs(len - best_len) <= tol && leaf < best_leaf)) {
      have = true;
      best_len = len;
      best_leaf = leaf;
    }
  };

  bool any_branch_point = false;
  for (std::size_t bp = 0; bp < nodes.size(); ++bp) {
    if (adj[bp].size() < 3) continue;
    any_branch_point = true;
    for (std::size_t next : adj[bp]) {
      std::size_t prev = bp;
      std::size_t cur = next;
      double len = (nodes[cur].position - nodes[prev].position).norm();
      while (adj[cur].size() == 2) {
        const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
        len += (nodes[cur].position - nodes[prev].position).norm();
        if (cur == bp) break;  // loop back to the start
      }
      if (adj[cur].size() == 1) consider(len, nodes[cur].id);
    }
  }
  if (any_branch_point) {
    if (!have) throw DomainError("skeleton has no leaf reachable through an unbranched chain");
    return best_leaf;
  }

  // A simple path: both ends are leaves of the longest path.
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (adj[i].size() == 1 && (!have || nodes[i].id < best_leaf)) {
      have = true;
      best_leaf = nodes[i].id;
    }
  if (!have) throw DomainError("skeleton has no leaf");
  return best_leaf;
}

}  // namespace broncho
