#include "scc/coil_combine.hpp"

namespace scc {

namespace {

Eigen::ArrayXd sum_of_squares(ComplexVolume const &coils)
{
  Eigen::ArrayXd ss = Eigen::ArrayXd::Zero(coils.shape().voxels());
  for (Index k = 0; k < coils.coils(); ++k) {
    ss += coils.coil(k).abs2();
  }
  return ss;
}

} // namespace

RealVolume ssos_combine(ComplexVolume const &coils)
{
  if (coils.coils() < 1 || coils.data().size() != coils.shape().size()) {
    throw ShapeError("ssos_combine: malformed coil stack " + to_string(coils.shape()));
  }
  RealVolume out = coils.like<double>(1);
  out.data() = sum_of_squares(coils).sqrt();
  return out;
}

SensitivitySet estimate_ssos_maps(ComplexVolume const &coils)
{
  RealVolume const ssos = ssos_combine(coils);
  double const peak = ssos.data().maxCoeff();

  SensitivitySet set;
  set.kind = SensitivityKind::SsosEstimate;
  set.maps = coils.like(coils.coils());
  set.maps.set_domain(Domain::Image);
  set.support = BoolArray::Constant(ssos.data().size(), false);
  if (!(peak > 0.0)) {
    return set;
  }
  double const floor = kSupportThreshold * peak;
  for (Index v = 0; v < ssos.data().size(); ++v) {
    double const s = ssos[v];
    if (s < floor) {
      continue;
    }
    set.support[v] = true;
    for (Index k = 0; k < coils.coils(); ++k) {
      set.maps.coil(k)[v] = coils.coil(k)[v] / s;
    }
  }
  return set;
}

ComplexVolume combine_with_maps(SensitivitySet const &maps, ComplexVolume const &coils)
{
  require_same_shape(maps.maps, coils, "combine_with_maps");
  ComplexVolume out = coils.like(1);
  for (Index k = 0; k < coils.coils(); ++k) {
    out.data() += maps.maps.coil(k).conjugate() * coils.coil(k);
  }
  return out;
}

} // namespace scc
