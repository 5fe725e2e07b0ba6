#pragma once

#include "scc/cg.hpp"
#include "scc/forward_model.hpp"
#include "scc/types.hpp"

namespace scc {

struct ReconConfig
{
  /// Weight of the Tikhonov term ||x||^2.
  double image_reg_lambda = 0.0;
  CgConfig cg;
  double noise_sigma = 1.0;

  void validate() const;
};

struct ReconResult
{
  ComplexVolume image;
  int iterations = 0;
  double final_residual = 0.0;
};

/// Solves (A^H A / sigma^2 + lambda I) x = A^H y / sigma^2 with A = P F S.
ReconResult reconstruct_detailed(ComplexVolume const &y, SensitivitySet const &maps,
                                 SamplingMask const &mask, ReconConfig const &cfg);

ComplexVolume reconstruct(ComplexVolume const &y, SensitivitySet const &maps, SamplingMask const &mask,
                          ReconConfig const &cfg);

/// reconstruct() with every map multiplied by g.
ComplexVolume reconstruct_corrected(ComplexVolume const &y, SensitivitySet const &maps,
                                    SamplingMask const &mask, CorrectionMap const &g,
                                    ReconConfig const &cfg);

/// x_H = h * x
ComplexVolume apply_image_correction(ComplexVolume const &xhat, CorrectionMap const &h);

} // namespace scc
