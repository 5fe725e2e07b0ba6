#pragma once

#include <array>
#include <optional>
#include <vector>

#include "scc/types.hpp"

namespace scc {

/// Fully sampled low-resolution body and surface coil stacks on one grid.
struct PrescanPair
{
  ComplexVolume body;
  ComplexVolume surface;

  void validate() const;
};

enum class Normalization
{
  ByBodyMax,    // g path
  BySurfaceMax, // h path
};

struct PrescanConfig
{
  double tukey_alpha = 0.5;
  /// Target matrix (x, y, z); unset keeps the acquired matrix.
  std::optional<std::array<Index, 3>> pad_to;
  Normalization normalize = Normalization::ByBodyMax;
};

struct ConditionedPrescan
{
  RealVolume body;    // x_bc
  RealVolume surface; // x_sc
};

/// Tukey window centered on sample floor(n/2), the DC location of a
/// centered DFT: the periodic (DFT-even) window for even n, the symmetric one
/// for odd n. alpha = 0 is rectangular, alpha = 1 is Hann.
std::vector<double> tukey_window_1d(Index n, double alpha);

/// Multiplies k-space by the separable product of per-axis Tukey windows.
ComplexVolume apodize_kspace(ComplexVolume const &v, double alpha);

/// Embeds k-space centered in a larger zero grid. The field of view is kept,
/// so voxel sizes shrink by n / pad_to; the 2-norm is unchanged.
ComplexVolume zeropad_kspace(ComplexVolume const &v, std::array<Index, 3> const &pad_to);

/// Per coil: DFT, apodize, zero-pad, inverse DFT; then SSoS-combine each stack
/// and divide both results by the maximum of the selected one.
ConditionedPrescan condition_prescan(PrescanPair const &pair, PrescanConfig const &cfg);

} // namespace scc
