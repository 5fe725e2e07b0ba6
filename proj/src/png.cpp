#include "scc/png.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

#include "scc/error.hpp"

namespace scc {

PngScale parse_png_scale(std::string const &s)
{
  if (s == "fixed01") {
    return PngScale::Fixed01;
  }
  if (s == "max") {
    return PngScale::Max;
  }
  throw ConfigError("scale must be fixed01 or max, got '" + s + "'");
}

std::vector<std::uint8_t> to_gray8(RealVolume const &v, PngScale scale, std::optional<Index> slice)
{
  Shape const &s = v.shape();
  if (s.ncoil != 1) {
    throw ShapeError("render: expected a single-channel volume");
  }
  Index z = 0;
  if (s.nz > 1) {
    if (!slice) {
      throw ShapeError("render: 3D input needs a slice index");
    }
    z = *slice;
  } else if (slice) {
    z = *slice;
  }
  if (z < 0 || z >= s.nz) {
    throw ShapeError("render: slice " + std::to_string(z) + " out of range");
  }

  auto const plane = v.data().segment(z * s.nx * s.ny, s.nx * s.ny);
  double divisor = 1.0;
  if (scale == PngScale::Max) {
    double const peak = plane.maxCoeff();
    divisor = peak > 0.0 ? peak : 1.0;
  }
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(plane.size()));
  for (Index i = 0; i < plane.size(); ++i) {
    double value = plane[i] / divisor;
    value = std::isfinite(value) ? std::clamp(value, 0.0, 1.0) : 0.0;
    pixels[i] = static_cast<std::uint8_t>(std::floor(255.0 * value + 0.5));
  }
  return pixels;
}

void render_png(RealVolume const &v, std::filesystem::path const &path, PngScale scale, std::optional<Index> slice)
{
  auto const pixels = to_gray8(v, scale, slice);
  auto const width = static_cast<png_uint_32>(v.shape().nx);
  auto const height = static_cast<png_uint_32>(v.shape().ny);

  std::unique_ptr<FILE, int (*)(FILE *)> file(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng failed writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (png_uint_32 row = 0; row < height; ++row) {
    png_write_row(png, pixels.data() + static_cast<std::size_t>(row) * width);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void render_png(ComplexVolume const &v, std::filesystem::path const &path, PngScale scale, std::optional<Index> slice)
{
  render_png(magnitude(v), path, scale, slice);
}

} // namespace scc
