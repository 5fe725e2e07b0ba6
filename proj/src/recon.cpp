#include "scc/recon.hpp"

#include "scc/metrics.hpp"

namespace scc {

void ReconConfig::validate() const
{
  if (!(noise_sigma > 0.0)) {
    throw ConfigError("recon: noise_sigma must be > 0");
  }
  if (!(image_reg_lambda >= 0.0)) {
    throw ConfigError("recon: image_reg_lambda must be >= 0");
  }
  cg.validate();
}

ReconResult reconstruct_detailed(ComplexVolume const &y, SensitivitySet const &maps, SamplingMask const &mask,
                                 ReconConfig const &cfg)
{
  cfg.validate();
  if (mask.count() < 1) {
    throw ConfigError("reconstruct: empty sampling mask");
  }
  if (!(y.shape() == maps.maps.shape())) {
    throw ShapeError("reconstruct: data " + to_string(y.shape()) + " vs maps " + to_string(maps.maps.shape()));
  }
  ForwardModel model{maps, mask, 3, cfg.noise_sigma};
  model.validate();

  double const inv_var = 1.0 / (cfg.noise_sigma * cfg.noise_sigma);
  Shape const grid = y.shape().spatial();
  Geometry const geometry = y.geometry();

  ComplexVolume kspace = y;
  kspace.set_domain(Domain::KSpace);
  VectorX<Complex> const rhs = (apply_adjoint(model, kspace).data() * inv_var).matrix();

  auto normal_op = [&](VectorX<Complex> const &x) {
    ComplexVolume image(grid, x.array(), Domain::Image, geometry);
    ComplexVolume back = apply_adjoint(model, apply_forward(model, image));
    VectorX<Complex> out = (back.data() * inv_var).matrix();
    if (cfg.image_reg_lambda > 0.0) {
      out += cfg.image_reg_lambda * x;
    }
    return out;
  };
  auto const cg = cg_solve<Complex>(normal_op, rhs, cfg.cg);

  ReconResult result;
  result.image = ComplexVolume(grid, cg.solution.array(), Domain::Image, geometry);
  result.iterations = cg.iterations;
  result.final_residual = cg.final_residual;
  return result;
}

ComplexVolume reconstruct(ComplexVolume const &y, SensitivitySet const &maps, SamplingMask const &mask,
                          ReconConfig const &cfg)
{
  return reconstruct_detailed(y, maps, mask, cfg).image;
}

ComplexVolume reconstruct_corrected(ComplexVolume const &y, SensitivitySet const &maps, SamplingMask const &mask,
                                    CorrectionMap const &g, ReconConfig const &cfg)
{
  g.validate();
  SensitivitySet corrected = maps;
  corrected.maps = elementwise_scale(maps.maps, g);
  return reconstruct(y, corrected, mask, cfg);
}

ComplexVolume apply_image_correction(ComplexVolume const &xhat, CorrectionMap const &h)
{
  h.validate();
  return elementwise_scale(xhat, h);
}

} // namespace scc
