#pragma once

#include <vector>

#include "scc/volume.hpp"

namespace scc {

struct PhantomShape
{
  enum class Kind
  {
    Ellipse,
    Rectangle
  };

  Kind kind = Kind::Ellipse;
  Eigen::Vector2d center_mm = Eigen::Vector2d::Zero();
  /// Semi-axes for ellipses, half widths for rectangles.
  Eigen::Vector2d half_extent_mm = Eigen::Vector2d::Ones();
  double angle_deg = 0.0;
  double intensity = 1.0;
};

struct PhantomSpec
{
  Index nx = 256;
  Index ny = 256;
  Eigen::Vector2d fov_mm{256.0, 256.0};
  std::vector<PhantomShape> shapes;

  void validate() const;
  Geometry geometry() const;
};

/// Background ellipse (0.8) spanning 70% of the field of view plus six
/// interior structures between 0.2 and 1.0.
PhantomSpec default_phantom(Index n = 256, double fov_mm = 256.0);

/// Rasterizes the shapes in order; a voxel belongs to a shape when its center
/// does, and later shapes overwrite earlier ones.
ComplexVolume make_phantom(PhantomSpec const &spec);

} // namespace scc
