#include "scc/metrics.hpp"

namespace scc {

ComplexVolume elementwise_scale(ComplexVolume const &volume, RealVolume const &map)
{
  if (!volume.shape().same_grid(map.shape()) || map.coils() != 1) {
    throw ShapeError("elementwise_scale: map " + to_string(map.shape()) + " does not match volume " +
                     to_string(volume.shape()));
  }
  ComplexVolume out = volume;
  for (Index c = 0; c < out.coils(); ++c) {
    out.coil(c) *= map.data().cast<Complex>();
  }
  return out;
}

ComplexVolume elementwise_scale(ComplexVolume const &volume, CorrectionMap const &map)
{
  return elementwise_scale(volume, map.values);
}

} // namespace scc
