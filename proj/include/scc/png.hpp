#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scc/volume.hpp"

namespace scc {

enum class PngScale
{
  Fixed01, // [0, 1] -> [0, 255], clipped
  Max,     // divide by the maximum first
};

PngScale parse_png_scale(std::string const &s);

/// 8-bit gray levels of one slice, row-major with x fastest. A value v maps to
/// floor(255 v + 0.5) after clipping to [0, 1], so 0.5 becomes 128.
std::vector<std::uint8_t> to_gray8(RealVolume const &v, PngScale scale, std::optional<Index> slice = {});

/// Writes one slice as a grayscale PNG. Volumes with nz > 1 need a slice index.
void render_png(RealVolume const &v, std::filesystem::path const &path, PngScale scale,
                std::optional<Index> slice = {});
/// Renders the magnitude.
void render_png(ComplexVolume const &v, std::filesystem::path const &path, PngScale scale,
                std::optional<Index> slice = {});

} // namespace scc
