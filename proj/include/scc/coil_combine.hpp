#pragma once

#include "scc/types.hpp"

namespace scc {

/// Root of the sum of squares over coils. Single coil, real nonnegative.
RealVolume ssos_combine(ComplexVolume const &coils);

/// Sensitivity estimate obtained by dividing every coil image by the SSoS
/// image. Voxels whose SSoS is below kSupportThreshold * max are outside the
/// support and hold zero in every coil; an all-zero input gives an empty
/// support.
SensitivitySet estimate_ssos_maps(ComplexVolume const &coils);

/// sum_k conj(S_k) * coils_k, i.e. S^H applied to a coil stack.
ComplexVolume combine_with_maps(SensitivitySet const &maps, ComplexVolume const &coils);

} // namespace scc
