#include "scc/types.hpp"

#include <cmath>

namespace scc {

SamplingMask::SamplingMask(Shape grid, BoolArray keep)
  : grid_(grid.spatial()), keep_(std::move(keep))
{
  if (keep_.size() != grid_.voxels()) {
    throw ShapeError("sampling mask: " + std::to_string(keep_.size()) + " entries for grid " +
                     to_string(grid_));
  }
  count_ = keep_.count();
  if (count_ < 1) {
    throw ConfigError("sampling mask selects no k-space location");
  }
}

SamplingMask SamplingMask::full(Shape grid)
{
  return SamplingMask(grid, BoolArray::Constant(grid.voxels(), true));
}

SamplingMask SamplingMask::uniform(Shape grid, Index rate, int axis)
{
  if (rate < 1) {
    throw ConfigError("sampling mask: rate must be >= 1");
  }
  if (axis < 0 || axis > 2) {
    throw ConfigError("sampling mask: axis must be 0, 1 or 2");
  }
  grid = grid.spatial();
  Index const center = grid.extent(axis) / 2;
  BoolArray keep(grid.voxels());
  Index i = 0;
  for (Index z = 0; z < grid.nz; ++z) {
    for (Index y = 0; y < grid.ny; ++y) {
      for (Index x = 0; x < grid.nx; ++x, ++i) {
        Index const pos = axis == 0 ? x : axis == 1 ? y : z;
        Index const offset = pos - center;
        keep[i] = ((offset % rate) + rate) % rate == 0;
      }
    }
  }
  return SamplingMask(grid, std::move(keep));
}

void PlaneSpec::validate() const
{
  constexpr double tol = 1e-9;
  if (std::abs(row_dir.norm() - 1.0) > tol || std::abs(col_dir.norm() - 1.0) > tol) {
    throw ConfigError("plane: row_dir and col_dir must be unit vectors");
  }
  if (std::abs(row_dir.dot(col_dir)) > tol) {
    throw ConfigError("plane: row_dir and col_dir must be orthogonal");
  }
  if (!(row_spacing_mm > 0.0) || !(col_spacing_mm > 0.0)) {
    throw ConfigError("plane: degenerate spacing");
  }
  if (rows < 1 || cols < 1) {
    throw ConfigError("plane: rows and cols must be positive");
  }
}

std::vector<std::string> SensitivitySet::check() const
{
  std::vector<std::string> errors;
  Shape const &s = maps.shape();
  if (support.size() != s.voxels()) {
    errors.push_back("support mask length does not match the map grid");
    return errors;
  }
  for (Index v = 0; v < s.voxels(); ++v) {
    double ss = 0.0;
    for (Index k = 0; k < s.ncoil; ++k) {
      ss += std::norm(maps.coil(k)[v]);
    }
    if (!support[v] && ss != 0.0) {
      errors.push_back("nonzero map outside support at voxel " + std::to_string(v));
    } else if (support[v] && kind == SensitivityKind::SsosEstimate && std::abs(ss - 1.0) > 1e-6) {
      errors.push_back("sum of squares " + std::to_string(ss) + " != 1 at voxel " + std::to_string(v));
    }
  }
  return errors;
}

void CorrectionMap::validate() const
{
  auto const &d = values.data();
  if (d.size() != values.shape().size() || values.shape().ncoil != 1) {
    throw ShapeError("correction map: expected one real channel");
  }
  if (!d.isFinite().all()) {
    throw DomainError("correction map: non-finite value");
  }
  if ((d < 0.0).any()) {
    throw DomainError("correction map: negative value");
  }
}

char const *to_string(MapKind kind)
{
  return kind == MapKind::GMap ? "g" : "h";
}

MapKind parse_map_kind(std::string const &s)
{
  if (s == "g" || s == "g_map") {
    return MapKind::GMap;
  }
  if (s == "h" || s == "h_map") {
    return MapKind::HMap;
  }
  throw ConfigError("map kind must be g or h, got '" + s + "'");
}

} // namespace scc
