#include "scc/interpolate.hpp"

#include <algorithm>
#include <cmath>

namespace scc {

namespace {

Eigen::Vector3d grid_center(Shape const &s)
{
  return {(s.nx - 1) / 2.0, (s.ny - 1) / 2.0, (s.nz - 1) / 2.0};
}

} // namespace

Eigen::Vector3d voxel_position(Geometry const &geometry, Shape const &shape, Eigen::Vector3d const &ijk)
{
  return geometry.origin_mm + ((ijk - grid_center(shape)).array() * geometry.voxel_size_mm.array()).matrix();
}

Eigen::Vector3d world_to_voxel(Geometry const &geometry, Shape const &shape, Eigen::Vector3d const &p)
{
  return ((p - geometry.origin_mm).array() / geometry.voxel_size_mm.array()).matrix() + grid_center(shape);
}

double sample_trilinear(RealVolume const &volume, Eigen::Vector3d const &ijk)
{
  Shape const &s = volume.shape();
  Index lo[3];
  double frac[3];
  for (int a = 0; a < 3; ++a) {
    Index const n = s.extent(a);
    double const c = std::clamp(ijk[a], 0.0, static_cast<double>(n - 1));
    if (n == 1) {
      lo[a] = 0;
      frac[a] = 0.0;
      continue;
    }
    lo[a] = std::min(static_cast<Index>(std::floor(c)), n - 2);
    frac[a] = c - static_cast<double>(lo[a]);
  }
  double acc = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    double const wz = dz ? frac[2] : 1.0 - frac[2];
    if (wz == 0.0) continue;
    for (int dy = 0; dy < 2; ++dy) {
      double const wy = dy ? frac[1] : 1.0 - frac[1];
      if (wy == 0.0) continue;
      for (int dx = 0; dx < 2; ++dx) {
        double const wx = dx ? frac[0] : 1.0 - frac[0];
        if (wx == 0.0) continue;
        acc += wx * wy * wz * volume(lo[0] + dx, lo[1] + dy, lo[2] + dz);
      }
    }
  }
  return acc;
}

CorrectionMap interpolate_to_plane(CorrectionMap const &map3d, PlaneSpec const &plane)
{
  plane.validate();
  RealVolume const &src = map3d.values;
  if (src.coils() != 1) {
    throw ShapeError("interpolate_to_plane: map must have a single channel");
  }
  Shape const &s = src.shape();
  Geometry const &g = src.geometry();

  Geometry out_geometry;
  out_geometry.voxel_size_mm = {plane.col_spacing_mm, plane.row_spacing_mm, g.voxel_size_mm.z()};
  out_geometry.origin_mm = plane.origin_mm +
                           0.5 * static_cast<double>(plane.rows - 1) * plane.row_spacing_mm * plane.row_dir +
                           0.5 * static_cast<double>(plane.cols - 1) * plane.col_spacing_mm * plane.col_dir;
  CorrectionMap out;
  out.kind = map3d.kind;
  out.values = RealVolume(Shape{plane.cols, plane.rows, 1, 1}, Domain::Image, out_geometry);
  for (Index r = 0; r < plane.rows; ++r) {
    for (Index c = 0; c < plane.cols; ++c) {
      Eigen::Vector3d const p = plane.origin_mm + static_cast<double>(r) * plane.row_spacing_mm * plane.row_dir +
                                static_cast<double>(c) * plane.col_spacing_mm * plane.col_dir;
      out.values(c, r) = sample_trilinear(src, world_to_voxel(g, s, p));
    }
  }
  return out;
}

} // namespace scc
