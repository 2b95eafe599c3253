#pragma once

#include <filesystem>
#include <string>

#include "broncho/tri_mesh.hpp"

namespace broncho {

/// ASCII `v` and `f` records. Face tokens may carry `/vt/vn` suffixes and
/// negative (relative) indices; anything but triangles is rejected.
TriMesh parse_obj(const std::string& text);
TriMesh read_obj(const std::filesystem::path& path);
std::string format_obj(const TriMesh& mesh);
void write_obj(const TriMesh& mesh, const std::filesystem::path& path);

/// Sidecar CSV `face_id,branch_id,sdf`; empty fields for absent attributes.
std::string format_face_attributes(const TriMesh& mesh);
void write_face_attributes(const TriMesh& mesh, const std::filesystem::path& path);
/// Loads labels (and SDF values when every row has one) onto `mesh`.
void read_face_attributes(TriMesh& mesh, const std::filesystem::path& path);

}  // namespace broncho
