#include "scc/forward_model.hpp"

#include "scc/fft.hpp"
#include "scc/parallel.hpp"

namespace scc {

void ForwardModel::validate() const
{
  if (!sens.maps.shape().same_grid(mask.grid())) {
    throw ShapeError("forward model: sensitivity grid " + to_string(sens.maps.shape()) +
                     " does not match mask grid " + to_string(mask.grid()));
  }
  if (fft_dims != 2 && fft_dims != 3) {
    throw ConfigError("forward model: fft_dims must be 2 or 3");
  }
  if (!(noise_sigma >= 0.0)) {
    throw ConfigError("forward model: noise_sigma must be >= 0");
  }
}

void apply_mask(SamplingMask const &mask, ComplexVolume &kspace)
{
  if (!kspace.shape().same_grid(mask.grid())) {
    throw ShapeError("apply_mask: k-space grid " + to_string(kspace.shape()) + " vs mask " +
                     to_string(mask.grid()));
  }
  auto const keep = mask.keep().cast<double>().cast<Complex>();
  for (Index c = 0; c < kspace.coils(); ++c) {
    kspace.coil(c) *= keep;
  }
}

ComplexVolume apply_forward(ForwardModel const &model, ComplexVolume const &x)
{
  model.validate();
  Shape const &s = model.sens.maps.shape();
  if (x.coils() != 1 || !x.shape().same_grid(s)) {
    throw ShapeError("apply_forward: image " + to_string(x.shape()) + " vs model " + to_string(s));
  }
  ComplexVolume y = x.like(s.ncoil);
  y.set_domain(Domain::KSpace);
  parallel_for(s.ncoil, [&](Index k) {
    ComplexVolume coil_image(s.spatial(), model.sens.maps.coil(k) * x.data(), Domain::Image, x.geometry());
    ComplexVolume ks = fft_centered(coil_image, model.fft_dims);
    apply_mask(model.mask, ks);
    y.coil(k) = ks.data();
  });
  return y;
}

ComplexVolume apply_adjoint(ForwardModel const &model, ComplexVolume const &y)
{
  model.validate();
  Shape const &s = model.sens.maps.shape();
  if (!(y.shape() == s)) {
    throw ShapeError("apply_adjoint: data " + to_string(y.shape()) + " vs model " + to_string(s));
  }
  ComplexVolume per_coil = y.like(s.ncoil);
  parallel_for(s.ncoil, [&](Index k) {
    ComplexVolume ks(s.spatial(), y.coil(k), Domain::KSpace, y.geometry());
    apply_mask(model.mask, ks);
    ComplexVolume img = ifft_centered(ks, model.fft_dims);
    per_coil.coil(k) = model.sens.maps.coil(k).conjugate() * img.data();
  });
  // Fixed summation order keeps the result independent of scheduling.
  ComplexVolume x = y.like(1);
  x.set_domain(Domain::Image);
  for (Index k = 0; k < s.ncoil; ++k) {
    x.data() += per_coil.coil(k);
  }
  return x;
}

} // namespace scc
