#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "broncho/airway_tree.hpp"
#include "broncho/text_io.hpp"

namespace broncho {

/// Undirected skeleton as read from text: `N id x y z`, `E a b`, optional
/// `R id`. Blank lines and lines starting with `#` are ignored.
struct Skeleton {
  std::vector<Node> nodes;
  std::vector<EdgeSpec> edges;
  std::optional<NodeId> root;
};

Skeleton read_skeleton(const std::filesystem::path& path);
Skeleton parse_skeleton(const std::string& text);

/// Builds the tree; the root comes from the `R` record, else detect_root.
AirwayTree skeleton_to_tree(const Skeleton& skeleton);

/// Writes nodes in stored order, edges in branch-id order, then the root.
void write_skeleton(const AirwayTree& tree, const std::filesystem::path& path);
std::string format_skeleton(const AirwayTree& tree);

/// `branch_id,generation,horsfield,strahler,length_mm,diameter_mm,angle_deg`
void write_branch_attributes(const AirwayTree& tree, const std::filesystem::path& path);
std::string format_branch_attributes(const AirwayTree& tree);

/// Reads the diameter column of an attribute CSV back onto `tree`. Rows
/// must cover every branch id; an empty diameter field leaves it unset.
AirwayTree read_branch_diameters(const AirwayTree& tree, const std::filesystem::path& path);

}  // namespace broncho
