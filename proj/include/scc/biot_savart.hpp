#pragma once

#include <Eigen/Geometry>

#include "scc/volume.hpp"

namespace scc {

/// Circular wire loop.
struct CoilGeometry
{
  Eigen::Vector3d center_mm = Eigen::Vector3d::Zero();
  /// Unit normal of the loop plane.
  Eigen::Vector3d axis = Eigen::Vector3d::UnitY();
  double radius_mm = 1.0;
  /// Number of line elements the loop is discretized into.
  int segments = 256;

  void validate() const;
};

/// Magnetic field of the loop at `points` (one per column), in units of
/// mu0 I / (4 pi). The loop is split into `segments` equal arcs, each
/// integrated by 4-point Gauss-Legendre on the circle; arcs within three arc
/// lengths of a point are bisected recursively first. |r|^2 is regularized to
/// |r|^2 + (1e-3 radius)^2 so points on the wire stay finite.
Eigen::Matrix3Xd biot_savart_field(CoilGeometry const &coil, Eigen::Matrix3Xd const &points);

/// Receive sensitivity B_x - i B_y on the voxel centers of a grid (center of
/// the grid at geometry.origin_mm), scaled so the peak magnitude is 1.
ComplexVolume biot_savart_map(CoilGeometry const &coil, Shape const &grid, Geometry const &geometry);

} // namespace scc
