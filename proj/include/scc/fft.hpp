#pragma once

#include "scc/volume.hpp"

namespace scc {

/// Unitary centered DFT over the first `dims` spatial axes of every coil
/// (DC at index n/2 along each axis). Axes of extent 1 are left as is.
/// Requires an image-domain volume and returns a k-space volume.
ComplexVolume fft_centered(ComplexVolume const &v, int dims = 3);

/// Inverse of fft_centered.
ComplexVolume ifft_centered(ComplexVolume const &v, int dims = 3);

} // namespace scc
