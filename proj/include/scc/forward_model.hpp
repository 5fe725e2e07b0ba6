#pragma once

#include "scc/types.hpp"

namespace scc {

/// y_k = P F S_k x for every coil k.
struct ForwardModel
{
  SensitivitySet sens;
  SamplingMask mask;
  int fft_dims = 3;
  double noise_sigma = 0.0;

  void validate() const;
};

/// Stacked masked k-space, one coil per sensitivity map. Unselected
/// locations hold exact zeros.
ComplexVolume apply_forward(ForwardModel const &model, ComplexVolume const &x);

/// sum_k conj(S_k) * F^H P^T y_k
ComplexVolume apply_adjoint(ForwardModel const &model, ComplexVolume const &y);

/// Zeroes every k-space location outside the mask, on every coil.
void apply_mask(SamplingMask const &mask, ComplexVolume &kspace);

} // namespace scc
