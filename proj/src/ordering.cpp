#include <algorithm>
#include <functional>

#include "broncho/airway_tree.hpp"

namespace broncho {

namespace {

/// Post-order fold over branches: children are combined before parents.
std::vector<int> fold_orders(const AirwayTree& tree,
                             const std::function<int(std::vector<int>&)>& combine) {
  std::vector<int> order(tree.branch_count(), 1);
  const auto& topo = tree.topological_order();
  std::vector<int> child_orders;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto& kids = tree.children(*it);
    if (kids.empty()) continue;
    child_orders.clear();
    for (int c : kids) child_orders.push_back(order[static_cast<std::size_t>(c)]);
    order[static_cast<std::size_t>(*it)] = combine(child_orders);
  }
  return order;
}

}  // namespace

std::vector<int> compute_horsfield_orders(const AirwayTree& tree) {
  return fold_orders(tree, [](std::vector<int>& kids) {
    const int m = *std::max_element(kids.begin(), kids.end());
    return kids.size() >= 2 ? m + 1 : m;
  });
}

std::vector<int> compute_strahler_orders(const AirwayTree& tree) {
  return fold_orders(tree, [](std::vector<int>& kids) {
    std::sort(kids.begin(), kids.end(), std::greater<>());
    if (kids.size() >= 2 && kids[0] == kids[1]) return kids[0] + 1;
    return kids[0];
  });
}

}  // namespace broncho
