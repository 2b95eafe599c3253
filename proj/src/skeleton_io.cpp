#include "broncho/skeleton_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "broncho/errors.hpp"
#include "broncho/morphometry.hpp"
#include "broncho/text_io.hpp"

namespace broncho {

Skeleton parse_skeleton(const std::string& text) {
  Skeleton s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    auto fail = [&](const char* what) {
      throw InputError("skeleton line " + std::to_string(line_no) + ": " + what);
    };
    if (tag == "N") {
      Node n;
      if (!(ls >> n.id >> n.position.x() >> n.position.y() >> n.position.z())) fail("malformed node record");
      s.nodes.push_back(n);
    } else if (tag == "E") {
      EdgeSpec e;
      if (!(ls >> e.tail >> e.head)) fail("malformed edge record");
      s.edges.push_back(e);
    } else if (tag == "R") {
      NodeId r;
      if (!(ls >> r)) fail("malformed root record");
      s.root = r;
    } else {
      fail("unknown record type");
    }
    std::string extra;
    if (ls >> extra) fail("trailing fields");
  }
  return s;
}

Skeleton read_skeleton(const std::filesystem::path& path) { return parse_skeleton(read_text_file(path)); }

AirwayTree skeleton_to_tree(const Skeleton& skeleton) {
  const NodeId root = skeleton.root ? *skeleton.root : detect_root(skeleton.nodes, skeleton.edges);
  return build_tree(skeleton.nodes, skeleton.edges, root);
}

std::string format_skeleton(const AirwayTree& tree) {
  std::string out;
  for (const auto& n : tree.nodes())
    out += "N " + std::to_string(n.id) + " " + format_number(n.position.x()) + " " +
           format_number(n.position.y()) + " " + format_number(n.position.z()) + "\n";
  for (const auto& b : tree.branches())
    out += "E " + std::to_string(b.tail) + " " + std::to_string(b.head) + "\n";
  out += "R " + std::to_string(tree.root()) + "\n";
  return out;
}

void write_skeleton(const AirwayTree& tree, const std::filesystem::path& path) {
  write_text_file(path, format_skeleton(tree));
}

std::string format_branch_attributes(const AirwayTree& tree) {
  const auto horsfield = compute_horsfield_orders(tree);
  const auto strahler = compute_strahler_orders(tree);
  std::string out = "branch_id,generation,horsfield,strahler,length_mm,diameter_mm,angle_deg\n";
  for (const auto& b : tree.branches()) {
    const auto i = static_cast<std::size_t>(b.id);
    out += std::to_string(b.id) + "," + std::to_string(b.generation) + "," +
           std::to_string(horsfield[i]) + "," + std::to_string(strahler[i]) + "," +
           format_number(b.length) + ",";
    if (b.diameter) out += format_number(*b.diameter);
    out += ",";
    const int p = tree.parent(b.id);
    if (p >= 0) out += format_number(branching_angle(tree.branch(p).direction, b.direction));
    out += "\n";
  }
  return out;
}

void write_branch_attributes(const AirwayTree& tree, const std::filesystem::path& path) {
  write_text_file(path, format_branch_attributes(tree));
}

AirwayTree read_branch_diameters(const AirwayTree& tree, const std::filesystem::path& path) {
  const auto table = read_csv(path);
  const int id_col = table.column("branch_id");
  const int d_col = table.column("diameter_mm");
  std::vector<std::optional<double>> diam(tree.branch_count());
  std::vector<bool> seen(tree.branch_count(), false);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const long id = parse_long(row.at(static_cast<std::size_t>(id_col)), path, r + 2);
    if (id < 0 || static_cast<std::size_t>(id) >= tree.branch_count())
      throw InputError(path.string() + ": branch id " + std::to_string(id) + " out of range");
    seen[static_cast<std::size_t>(id)] = true;
    const std::string& field = row.at(static_cast<std::size_t>(d_col));
    if (!field.empty()) diam[static_cast<std::size_t>(id)] = parse_double(field, path, r + 2);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw InputError(path.string() + ": missing row for branch " + std::to_string(i));
  for (const auto& d : diam)
    if (!d) return tree.without_diameters();
  std::vector<double> values;
  for (const auto& d : diam) values.push_back(*d);
  return tree.with_diameters(values);
}

}  // namespace broncho
