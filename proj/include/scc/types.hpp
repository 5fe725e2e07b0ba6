#pragma once

#include <vector>

#include "scc/volume.hpp"

namespace scc {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Voxels whose sum-of-squares falls below this fraction of the maximum are
/// outside the sensitivity support.
inline constexpr double kSupportThreshold = 1e-6;

/// Cartesian k-space selection shared by all coils. Unselected locations are
/// carried as structural zeros in k-space volumes.
class SamplingMask
{
public:
  SamplingMask() = default;
  SamplingMask(Shape grid, BoolArray keep);

  static SamplingMask full(Shape grid);
  /// Keeps every `rate`-th line along `axis`, always including the k-space
  /// center line.
  static SamplingMask uniform(Shape grid, Index rate, int axis = 1);

  Shape const &grid() const { return grid_; }
  BoolArray const &keep() const { return keep_; }
  Index count() const { return count_; }
  bool operator[](Index i) const { return keep_[i]; }

private:
  Shape grid_;
  BoolArray keep_;
  Index count_ = 0;
};

/// Oblique 2D sampling plane. Point (r, c) sits at
/// origin + r * row_spacing * row_dir + c * col_spacing * col_dir.
struct PlaneSpec
{
  Eigen::Vector3d origin_mm = Eigen::Vector3d::Zero();
  Eigen::Vector3d row_dir = Eigen::Vector3d::UnitY();
  Eigen::Vector3d col_dir = Eigen::Vector3d::UnitX();
  double row_spacing_mm = 1.0;
  double col_spacing_mm = 1.0;
  Index rows = 1;
  Index cols = 1;

  /// Throws ConfigError unless both directions are unit, orthogonal (1e-9)
  /// and the spacing and extents are positive.
  void validate() const;
};

enum class SensitivityKind
{
  TrueMap,
  SsosEstimate
};

struct SensitivitySet
{
  ComplexVolume maps;
  BoolArray support;
  SensitivityKind kind = SensitivityKind::TrueMap;

  /// Violated invariants, empty when consistent.
  std::vector<std::string> check() const;
};

enum class MapKind
{
  GMap,
  HMap
};

/// Real nonnegative voxelwise correction (G before reconstruction, H after).
struct CorrectionMap
{
  RealVolume values;
  MapKind kind = MapKind::GMap;

  void validate() const;
};

char const *to_string(MapKind kind);
MapKind parse_map_kind(std::string const &s);

} // namespace scc
