#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "scc/types.hpp"

namespace scc {

/// Returned by nmse() when the residual vanishes.
inline constexpr double kNmseFloorDb = -300.0;

/// 20 log10(||reference - estimate|| / ||reference||), floored at -300 dB.
template <typename Scalar>
double nmse(Volume<Scalar> const &reference, Volume<Scalar> const &estimate)
{
  require_same_shape(reference, estimate, "nmse");
  double const ref = reference.data().matrix().norm();
  if (!(ref > 0.0)) {
    throw DomainError("nmse: reference has zero norm");
  }
  double const res = (reference.data() - estimate.data()).matrix().norm();
  if (res == 0.0) {
    return kNmseFloorDb;
  }
  return std::max(kNmseFloorDb, 20.0 * std::log10(res / ref));
}

/// out[v] = map[v] * in[v], broadcast over coils.
ComplexVolume elementwise_scale(ComplexVolume const &volume, CorrectionMap const &map);
ComplexVolume elementwise_scale(ComplexVolume const &volume, RealVolume const &map);

/// Lists every violated volume invariant; an empty list means the volume is
/// well formed.
template <typename Scalar>
std::vector<std::string> validate_volume(Volume<Scalar> const &v)
{
  std::vector<std::string> errors;
  auto const &s = v.shape();
  if (s.nx < 1 || s.ny < 1 || s.nz < 1 || s.ncoil < 1) {
    errors.push_back("non-positive extent in shape " + to_string(s));
  }
  if (v.data().size() != s.size()) {
    errors.push_back("length mismatch: " + std::to_string(v.data().size()) + " samples for shape " +
                     to_string(s));
  }
  if (!(v.geometry().voxel_size_mm.array() > 0.0).all()) {
    errors.push_back("voxel size must be strictly positive");
  }
  for (Index i = 0; i < v.data().size(); ++i) {
    Scalar const x = v.data()[i];
    bool finite;
    if constexpr (std::is_same_v<Scalar, Complex>) {
      finite = std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
      finite = std::isfinite(x);
    }
    if (!finite) {
      errors.push_back("non-finite at index " + std::to_string(i));
    }
  }
  return errors;
}

} // namespace scc
