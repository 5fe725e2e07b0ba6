#pragma once

#include "scc/types.hpp"

namespace scc {

/// World position (mm) of voxel (i, j, k). The geometric center of the grid,
/// ((n - 1) / 2 along each axis), sits at origin_mm.
Eigen::Vector3d voxel_position(Geometry const &geometry, Shape const &shape, Eigen::Vector3d const &ijk);

/// Continuous voxel coordinates of a world position.
Eigen::Vector3d world_to_voxel(Geometry const &geometry, Shape const &shape, Eigen::Vector3d const &p);

/// Trilinear sample at continuous voxel coordinates; coordinates outside the
/// grid are clamped to the nearest voxel.
double sample_trilinear(RealVolume const &volume, Eigen::Vector3d const &ijk);

/// Resamples a 3D map on the plane grid. The result has cols along x and rows
/// along y; its origin_mm is the world position of the plane center.
CorrectionMap interpolate_to_plane(CorrectionMap const &map3d, PlaneSpec const &plane);

} // namespace scc
