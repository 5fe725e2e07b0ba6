#include "scc/phantom.hpp"

#include <cmath>
#include <numbers>

namespace scc {

void PhantomSpec::validate() const
{
  if (nx < 16 || ny < 16) {
    throw ConfigError("phantom: matrix must be at least 16 per axis");
  }
  if (!(fov_mm.array() > 0.0).all()) {
    throw ConfigError("phantom: field of view must be positive");
  }
  for (auto const &shape : shapes) {
    if (!(shape.intensity >= 0.0 && shape.intensity <= 1.0)) {
      throw ConfigError("phantom: intensities must lie in [0, 1]");
    }
    if (!(shape.half_extent_mm.array() > 0.0).all()) {
      throw ConfigError("phantom: shape extents must be positive");
    }
  }
}

Geometry PhantomSpec::geometry() const
{
  Geometry g;
  g.voxel_size_mm = {fov_mm.x() / static_cast<double>(nx), fov_mm.y() / static_cast<double>(ny), 1.0};
  return g;
}

PhantomSpec default_phantom(Index n, double fov_mm)
{
  using Kind = PhantomShape::Kind;
  double const f = fov_mm;
  auto shape = [f](Kind kind, double cx, double cy, double ax, double ay, double angle, double intensity) {
    return PhantomShape{kind, {cx * f, cy * f}, {ax * f, ay * f}, angle, intensity};
  };
  PhantomSpec spec;
  spec.nx = n;
  spec.ny = n;
  spec.fov_mm = {fov_mm, fov_mm};
  spec.shapes = {
      shape(Kind::Ellipse, 0.0, 0.0, 0.35, 0.32, 0.0, 0.8),
      shape(Kind::Ellipse, -0.15, -0.08, 0.08, 0.12, 20.0, 0.2),
      shape(Kind::Ellipse, 0.14, -0.10, 0.07, 0.10, -15.0, 0.4),
      shape(Kind::Rectangle, 0.0, 0.17, 0.12, 0.04, 0.0, 1.0),
      shape(Kind::Ellipse, 0.0, 0.0, 0.05, 0.05, 0.0, 0.6),
      shape(Kind::Ellipse, -0.13, 0.10, 0.04, 0.04, 0.0, 0.3),
      shape(Kind::Rectangle, 0.16, 0.08, 0.04, 0.06, 30.0, 0.9),
  };
  return spec;
}

ComplexVolume make_phantom(PhantomSpec const &spec)
{
  spec.validate();
  Geometry const g = spec.geometry();
  ComplexVolume x(Shape{spec.nx, spec.ny, 1, 1}, Domain::Image, g);
  double const cx = (spec.nx - 1) / 2.0;
  double const cy = (spec.ny - 1) / 2.0;
  for (auto const &shape : spec.shapes) {
    double const a = -shape.angle_deg * std::numbers::pi / 180.0;
    double const ca = std::cos(a);
    double const sa = std::sin(a);
    for (Index j = 0; j < spec.ny; ++j) {
      for (Index i = 0; i < spec.nx; ++i) {
        double const px = (i - cx) * g.voxel_size_mm.x() - shape.center_mm.x();
        double const py = (j - cy) * g.voxel_size_mm.y() - shape.center_mm.y();
        double const qx = (ca * px - sa * py) / shape.half_extent_mm.x();
        double const qy = (sa * px + ca * py) / shape.half_extent_mm.y();
        bool const inside = shape.kind == PhantomShape::Kind::Ellipse ? qx * qx + qy * qy <= 1.0
                                                                      : std::abs(qx) <= 1.0 && std::abs(qy) <= 1.0;
        if (inside) {
          x(i, j) = shape.intensity;
        }
      }
    }
  }
  return x;
}

} // namespace scc
