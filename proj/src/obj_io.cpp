#include "broncho/obj_io.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "broncho/errors.hpp"
#include "broncho/text_io.hpp"

namespace broncho {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("OBJ line " + std::to_string(line) + ": " + what);
}

}  // namespace

TriMesh parse_obj(const std::string& text) {
  TriMesh mesh;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::string tok[3];
      if (!(ls >> tok[0] >> tok[1] >> tok[2])) fail(line, "vertex needs three coordinates");
      Vec3 v;
      for (int a = 0; a < 3; ++a) {
        char* end = nullptr;
        v[a] = std::strtod(tok[a].c_str(), &end);
        if (end == tok[a].c_str() || *end != '\0' || !std::isfinite(v[a])) fail(line, "bad coordinate '" + tok[a] + "'");
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        long value = 0;
        try {
          std::size_t used = 0;
          value = std::stol(head, &used);
          if (used != head.size()) throw std::invalid_argument(head);
        } catch (const std::exception&) {
          fail(line, "bad face index '" + tok + "'");
        }
        const long nv = static_cast<long>(mesh.vertices.size());
        const long zero_based = value > 0 ? value - 1 : nv + value;
        if (value == 0 || zero_based < 0 || zero_based >= nv) fail(line, "face index out of range");
        idx.push_back(static_cast<int>(zero_based));
      }
      if (idx.size() != 3) fail(line, "only triangular faces are supported");
      mesh.faces.push_back({idx[0], idx[1], idx[2]});
    }
    // Other records (vn, vt, o, g, s, usemtl, ...) are ignored.
  }
  return mesh;
}

TriMesh read_obj(const std::filesystem::path& path) {
  try {
    return parse_obj(read_text_file(path));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("OBJ line", 0) == 0) throw InputError(path.string() + ": " + msg);
    throw;
  }
}

std::string format_obj(const TriMesh& mesh) {
  std::string out;
  for (const auto& v : mesh.vertices)
    out += "v " + format_number(v.x()) + " " + format_number(v.y()) + " " + format_number(v.z()) + "\n";
  for (const auto& f : mesh.faces)
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) + "\n";
  return out;
}

void write_obj(const TriMesh& mesh, const std::filesystem::path& path) { write_text_file(path, format_obj(mesh)); }

std::string format_face_attributes(const TriMesh& mesh) {
  std::string out = "face_id,branch_id,sdf\n";
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    out += std::to_string(f) + ",";
    if (!mesh.face_branch.empty()) out += std::to_string(mesh.face_branch[f]);
    out += ",";
    if (!mesh.face_sdf.empty() && std::isfinite(mesh.face_sdf[f])) out += format_number(mesh.face_sdf[f]);
    out += "\n";
  }
  return out;
}

void write_face_attributes(const TriMesh& mesh, const std::filesystem::path& path) {
  write_text_file(path, format_face_attributes(mesh));
}

void read_face_attributes(TriMesh& mesh, const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  const int c_face = t.column("face_id");
  const int c_branch = t.column("branch_id");
  const int c_sdf = t.column("sdf");
  if (t.rows.size() != mesh.faces.size())
    throw InputError(path.string() + ": " + std::to_string(t.rows.size()) + " rows for " +
                     std::to_string(mesh.faces.size()) + " faces");
  std::vector<int> branch(mesh.faces.size(), 0);
  std::vector<double> sdf(mesh.faces.size(), 0.0);
  std::vector<bool> seen(mesh.faces.size(), false);
  bool all_sdf = true;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const long f = parse_long(row[static_cast<std::size_t>(c_face)], path, r + 2);
    if (f < 0 || f >= static_cast<long>(mesh.faces.size()) || seen[static_cast<std::size_t>(f)])
      throw InputError(path.string() + ": line " + std::to_string(r + 2) + ": bad or repeated face_id");
    seen[static_cast<std::size_t>(f)] = true;
    branch[static_cast<std::size_t>(f)] =
        static_cast<int>(parse_long(row[static_cast<std::size_t>(c_branch)], path, r + 2));
    const std::string& s = row[static_cast<std::size_t>(c_sdf)];
    if (s.empty()) all_sdf = false;
    else sdf[static_cast<std::size_t>(f)] = parse_double(s, path, r + 2);
  }
  mesh.face_branch = std::move(branch);
  if (all_sdf) mesh.face_sdf = std::move(sdf);
  else mesh.face_sdf.clear();
}

}  // namespace broncho
