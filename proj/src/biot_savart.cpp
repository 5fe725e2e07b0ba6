#include "scc/biot_savart.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "scc/interpolate.hpp"
#include "scc/parallel.hpp"

namespace scc {

namespace {
constexpr int kMaxDepth = 30;
constexpr double kNearFactor = 3.0;
constexpr double kGaussNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                   0.8611363115940526};
constexpr double kGaussWeights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                     0.3478548451374538};
}

void CoilGeometry::validate() const
{
  if (std::abs(axis.norm() - 1.0) > 1e-9) {
    throw ConfigError("coil: axis must be a unit vector");
  }
  if (!(radius_mm > 0.0)) {
    throw ConfigError("coil: radius must be positive");
  }
  if (segments < 8) {
    throw ConfigError("coil: at least 8 segments are required");
  }
}

Eigen::Matrix3Xd biot_savart_field(CoilGeometry const &coil, Eigen::Matrix3Xd const &points)
{
  coil.validate();
  // Orthonormal frame (u, v, axis), right handed; current runs from u to v.
  Eigen::Vector3d const helper = std::abs(coil.axis.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d const u = coil.axis.cross(helper).normalized();
  Eigen::Vector3d const v = coil.axis.cross(u);

  int const n = coil.segments;
  double const R = coil.radius_mm;
  double const eps2 = std::pow(1e-3 * R, 2);
  double const panel = 2.0 * std::numbers::pi / n;

  // dl x r / (|r|^2 + eps^2)^(3/2) over the arc [t0, t1]. Gauss-Legendre on
  // the exact circle; arcs close to x are bisected first.
  std::function<Eigen::Vector3d(double, double, Eigen::Vector3d const &, int)> arc;
  arc = [&](double t0, double t1, Eigen::Vector3d const &x, int depth) -> Eigen::Vector3d {
    double const half = 0.5 * (t1 - t0);
    double const mid = 0.5 * (t0 + t1);
    double const length = R * (t1 - t0);
    Eigen::Vector3d const centre = coil.center_mm + R * (std::cos(mid) * u + std::sin(mid) * v);
    if (depth < kMaxDepth && (x - centre).norm() < kNearFactor * length) {
      return arc(t0, mid, x, depth + 1) + arc(mid, t1, x, depth + 1);
    }
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (int q = 0; q < 4; ++q) {
      double const t = mid + half * kGaussNodes[q];
      Eigen::Vector3d const dl = R * (-std::sin(t) * u + std::cos(t) * v);
      Eigen::Vector3d const r = x - (coil.center_mm + R * (std::cos(t) * u + std::sin(t) * v));
      double const d2 = r.squaredNorm() + eps2;
      b += (kGaussWeights[q] * half) * dl.cross(r) / (d2 * std::sqrt(d2));
    }
    return b;
  };

  // Unsplit panels: quadrature nodes and weighted line elements, precomputed.
  Eigen::Matrix3Xd nodes(3, 4 * n);
  Eigen::Matrix3Xd elements(3, 4 * n);
  Eigen::Matrix3Xd centres(3, n);
  for (int i = 0; i < n; ++i) {
    double const mid = panel * (i + 0.5);
    centres.col(i) = coil.center_mm + R * (std::cos(mid) * u + std::sin(mid) * v);
    for (int q = 0; q < 4; ++q) {
      double const t = mid + 0.5 * panel * kGaussNodes[q];
      nodes.col(4 * i + q) = coil.center_mm + R * (std::cos(t) * u + std::sin(t) * v);
      elements.col(4 * i + q) = (kGaussWeights[q] * 0.5 * panel * R) * (-std::sin(t) * u + std::cos(t) * v);
    }
  }
  double const near2 = std::pow(kNearFactor * R * panel, 2);

  Eigen::Matrix3Xd field(3, points.cols());
  Index const chunk = 256;
  Index const chunks = (points.cols() + chunk - 1) / chunk;
  parallel_for(chunks, [&](Index c) {
    Index const end = std::min<Index>(points.cols(), (c + 1) * chunk);
    for (Index p = c * chunk; p < end; ++p) {
      Eigen::Vector3d const x = points.col(p);
      Eigen::Vector3d b = Eigen::Vector3d::Zero();
      for (int i = 0; i < n; ++i) {
        if ((x - centres.col(i)).squaredNorm() < near2) {
          b += arc(panel * i, panel * (i + 1), x, 0);
          continue;
        }
        for (int q = 4 * i; q < 4 * i + 4; ++q) {
          Eigen::Vector3d const r = x - nodes.col(q);
          double const d2 = r.squaredNorm() + eps2;
          b += elements.col(q).cross(r) / (d2 * std::sqrt(d2));
        }
      }
      field.col(p) = b;
    }
  });
  return field;
}

ComplexVolume biot_savart_map(CoilGeometry const &coil, Shape const &grid, Geometry const &geometry)
{
  Shape const s = grid.spatial();
  Eigen::Matrix3Xd points(3, s.voxels());
  Index i = 0;
  for (Index z = 0; z < s.nz; ++z) {
    for (Index y = 0; y < s.ny; ++y) {
      for (Index x = 0; x < s.nx; ++x, ++i) {
        points.col(i) = voxel_position(geometry, s, Eigen::Vector3d(x, y, z));
      }
    }
  }
  Eigen::Matrix3Xd const b = biot_savart_field(coil, points);
  ComplexVolume map(s, Domain::Image, geometry);
  for (Index p = 0; p < s.voxels(); ++p) {
    map[p] = Complex(b(0, p), -b(1, p));
  }
  double const peak = map.data().abs().maxCoeff();
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw DomainError("biot_savart_map: field vanishes on the grid");
  }
  map.data() /= peak;
  return map;
}

} // namespace scc
