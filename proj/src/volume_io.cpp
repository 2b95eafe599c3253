#include "broncho/volume_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "broncho/errors.hpp"
#include "broncho/text_io.hpp"

static_assert(std::endian::native == std::endian::little, "raw volume I/O assumes a little-endian host");

namespace broncho {

namespace {

/// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string vec_line(const char* key, const Vec3& v) {
  return std::string(key) + " " + exact(v.x()) + " " + exact(v.y()) + " " + exact(v.z()) + "\n";
}

}  // namespace

std::filesystem::path raw_path_for(const std::filesystem::path& header_path) {
  auto p = header_path;
  p.replace_extension(".raw");
  return p;
}

VolumeHeader read_volume_header(const std::filesystem::path& header_path) {
  std::istringstream in(read_text_file(header_path));
  VolumeHeader h;
  bool has_dims = false, has_spacing = false, has_origin = false, has_type = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    bool ok = true;
    if (key == "dims") {
      ok = static_cast<bool>(ls >> h.grid.dims[0] >> h.grid.dims[1] >> h.grid.dims[2]);
      has_dims = true;
    } else if (key == "spacing") {
      ok = static_cast<bool>(ls >> h.grid.spacing.x() >> h.grid.spacing.y() >> h.grid.spacing.z());
      has_spacing = true;
    } else if (key == "origin") {
      ok = static_cast<bool>(ls >> h.grid.origin.x() >> h.grid.origin.y() >> h.grid.origin.z());
      has_origin = true;
    } else if (key == "dtype") {
      std::string t;
      ok = static_cast<bool>(ls >> t);
      if (t == "u8") h.type = VoxelType::U8;
      else if (t == "f32") h.type = VoxelType::F32;
      else throw InputError(header_path.string() + ": unsupported dtype '" + t + "'");
      has_type = true;
    } else {
      throw InputError(header_path.string() + ": unknown header key '" + key + "'");
    }
    if (!ok) throw InputError(header_path.string() + ": malformed '" + key + "' line");
  }
  if (!(has_dims && has_spacing && has_origin && has_type))
    throw InputError(header_path.string() + ": header needs dims, spacing, origin and dtype");
  h.grid.validate();
  return h;
}

void write_volume_header(const std::filesystem::path& header_path, const VolumeHeader& header) {
  const auto& g = header.grid;
  std::string text = "dims " + std::to_string(g.dims[0]) + " " + std::to_string(g.dims[1]) + " " +
                     std::to_string(g.dims[2]) + "\n";
  text += vec_line("spacing", g.spacing);
  text += vec_line("origin", g.origin);
  text += header.type == VoxelType::U8 ? "dtype u8\n" : "dtype f32\n";
  write_text_file(header_path, text);
}

VoxelMask read_mask(const std::filesystem::path& header_path) {
  const VolumeHeader h = read_volume_header(header_path);
  if (h.type != VoxelType::U8) throw InputError(header_path.string() + ": mask must have dtype u8");
  const auto raw = raw_path_for(header_path);
  std::ifstream in(raw, std::ios::binary);
  if (!in) throw InputError("cannot open " + raw.string());
  VoxelMask m;
  m.grid = h.grid;
  m.values.resize(h.grid.voxel_count());
  in.read(reinterpret_cast<char*>(m.values.data()), static_cast<std::streamsize>(m.values.size()));
  if (in.gcount() != static_cast<std::streamsize>(m.values.size()))
    throw InputError(raw.string() + ": expected " + std::to_string(m.values.size()) + " bytes");
  if (in.peek() != std::char_traits<char>::eof()) throw InputError(raw.string() + ": trailing bytes");
  return m;
}

void write_mask(const std::filesystem::path& header_path, const VoxelMask& mask) {
  if (mask.values.size() != mask.grid.voxel_count()) throw InputError("mask value count does not match dims");
  write_volume_header(header_path, {mask.grid, VoxelType::U8});
  const auto raw = raw_path_for(header_path);
  std::ofstream out(raw, std::ios::binary);
  if (!out) throw InputError("cannot write " + raw.string());
  out.write(reinterpret_cast<const char*>(mask.values.data()), static_cast<std::streamsize>(mask.values.size()));
  if (!out) throw InputError("write failed for " + raw.string());
}

std::vector<float> read_f32_raw(const std::filesystem::path& raw_path, std::size_t count) {
  std::ifstream in(raw_path, std::ios::binary);
  if (!in) throw InputError("cannot open " + raw_path.string());
  std::vector<float> v(count);
  const auto bytes = static_cast<std::streamsize>(count * sizeof(float));
  in.read(reinterpret_cast<char*>(v.data()), bytes);
  if (in.gcount() != bytes) throw InputError(raw_path.string() + ": expected " + std::to_string(bytes) + " bytes");
  if (in.peek() != std::char_traits<char>::eof()) throw InputError(raw_path.string() + ": trailing bytes");
  return v;
}

void write_f32_raw(const std::filesystem::path& raw_path, const std::vector<float>& values) {
  std::ofstream out(raw_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + raw_path.string());
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(float)));
  if (!out) throw InputError("write failed for " + raw_path.string());
}

}  // namespace broncho
