#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "broncho/lung_volume.hpp"
#include "broncho/voxel_grid.hpp"

namespace broncho {

enum class VoxelType { U8, F32 };

/// Header text:
///   dims nx ny nz
///   spacing sx sy sz
///   origin ox oy oz
///   dtype u8|f32
/// Voxel data lives in the sibling file with extension `.raw`,
/// little-endian, x-fastest.
struct VolumeHeader {
  VoxelGrid grid;
  VoxelType type = VoxelType::U8;
};

std::filesystem::path raw_path_for(const std::filesystem::path& header_path);

VolumeHeader read_volume_header(const std::filesystem::path& header_path);
void write_volume_header(const std::filesystem::path& header_path, const VolumeHeader& header);

VoxelMask read_mask(const std::filesystem::path& header_path);
void write_mask(const std::filesystem::path& header_path, const VoxelMask& mask);

std::vector<float> read_f32_raw(const std::filesystem::path& raw_path, std::size_t count);
void write_f32_raw(const std::filesystem::path& raw_path, const std::vector<float>& values);

}  // namespace broncho
