#include "scc/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "scc/coil_combine.hpp"
#include "scc/fft.hpp"
#include "scc/forward_model.hpp"

namespace scc {

std::vector<CoilGeometry> default_surface_coils(double fov_mm)
{
  std::vector<CoilGeometry> coils;
  for (int i = 0; i < 4; ++i) {
    double const angle = i * std::numbers::pi / 2.0;
    Eigen::Vector3d const dir(std::cos(angle), std::sin(angle), 0.0);
    coils.push_back(CoilGeometry{0.5 * fov_mm * dir, -dir, 0.2 * fov_mm, 256});
  }
  return coils;
}

std::vector<CoilGeometry> default_body_coils(double fov_mm)
{
  // Centers 1.5 fov above and below the isocenter.
  std::vector<CoilGeometry> coils;
  for (double side : {-1.0, 1.0}) {
    Eigen::Vector3d const dir(0.0, side, 0.0);
    coils.push_back(CoilGeometry{1.5 * fov_mm * dir, -dir, fov_mm, 256});
  }
  return coils;
}

SamplingMask MaskSpec::make(Shape const &grid) const
{
  return kind == Kind::Full ? SamplingMask::full(grid) : SamplingMask::uniform(grid, rate, axis);
}

namespace {

ComplexVolume coil_maps(std::vector<CoilGeometry> const &coils, Shape const &grid, Geometry const &geometry)
{
  if (coils.empty()) {
    throw ConfigError("simulate: coil list is empty");
  }
  ComplexVolume maps(grid.with_coils(static_cast<Index>(coils.size())), Domain::Image, geometry);
  for (std::size_t k = 0; k < coils.size(); ++k) {
    maps.coil(static_cast<Index>(k)) = biot_savart_map(coils[k], grid, geometry).data();
  }
  return maps;
}

ComplexVolume modulate(ComplexVolume const &maps, ComplexVolume const &x)
{
  ComplexVolume images = maps;
  for (Index k = 0; k < maps.coils(); ++k) {
    images.coil(k) *= x.data();
  }
  return images;
}

// Central n x n block of k-space (x and y only), returned as a low-resolution
// image stack covering the same field of view.
ComplexVolume low_resolution(ComplexVolume const &images, Index n)
{
  Shape const &s = images.shape();
  Index const nx = std::min(n, s.nx);
  Index const ny = std::min(n, s.ny);
  ComplexVolume const k = fft_centered(images);
  Geometry g = images.geometry();
  g.voxel_size_mm.x() *= static_cast<double>(s.nx) / static_cast<double>(nx);
  g.voxel_size_mm.y() *= static_cast<double>(s.ny) / static_cast<double>(ny);
  ComplexVolume block(Shape{nx, ny, s.nz, s.ncoil}, Domain::KSpace, g);
  Index const ox = s.nx / 2 - nx / 2;
  Index const oy = s.ny / 2 - ny / 2;
  for (Index c = 0; c < s.ncoil; ++c) {
    for (Index z = 0; z < s.nz; ++z) {
      for (Index y = 0; y < ny; ++y) {
        for (Index x = 0; x < nx; ++x) {
          block(x, y, z, c) = k(x + ox, y + oy, z, c);
        }
      }
    }
  }
  return ifft_centered(block);
}

SensitivitySet true_set(ComplexVolume maps)
{
  SensitivitySet set;
  set.kind = SensitivityKind::TrueMap;
  Eigen::ArrayXd ss = Eigen::ArrayXd::Zero(maps.shape().voxels());
  for (Index k = 0; k < maps.coils(); ++k) {
    ss += maps.coil(k).abs2();
  }
  set.support = ss > 0.0;
  set.maps = std::move(maps);
  return set;
}

} // namespace

void add_noise(ComplexVolume &kspace, SamplingMask const &mask, double sigma, std::uint64_t seed)
{
  if (!(sigma >= 0.0)) {
    throw ConfigError("noise: sigma must be >= 0");
  }
  if (!kspace.shape().same_grid(mask.grid())) {
    throw ShapeError("noise: k-space grid does not match the mask");
  }
  if (sigma == 0.0) {
    return;
  }
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (Index c = 0; c < kspace.coils(); ++c) {
    auto coil = kspace.coil(c);
    for (Index i = 0; i < coil.size(); ++i) {
      if (!mask[i]) {
        continue;
      }
      double const r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
      double const t = 2.0 * std::numbers::pi * uniform();
      coil[i] += Complex(sigma * r * std::cos(t), sigma * r * std::sin(t));
    }
  }
}

Acquisition simulate_acquisition(ComplexVolume const &x, std::vector<CoilGeometry> const &surface,
                                 std::vector<CoilGeometry> const &body, SamplingMask const &mask, double sigma,
                                 std::uint64_t seed, Index prescan_n)
{
  if (x.coils() != 1) {
    throw ShapeError("simulate: the object must be a single-channel image");
  }
  if (!x.shape().same_grid(mask.grid())) {
    throw ShapeError("simulate: mask grid " + to_string(mask.grid()) + " does not match image " +
                     to_string(x.shape()));
  }
  if (prescan_n < 2) {
    throw ConfigError("simulate: prescan matrix must be >= 2");
  }
  Shape const grid = x.shape().spatial();
  Geometry const &geometry = x.geometry();

  ComplexVolume surface_maps = coil_maps(surface, grid, geometry);
  ComplexVolume body_maps = coil_maps(body, grid, geometry);

  BoolArray const object = x.data().abs() > 0.0;
  if (!object.any()) {
    throw DomainError("simulate: the object is empty");
  }
  Eigen::ArrayXd const surface_env = ssos_combine(surface_maps).data();
  Eigen::ArrayXd const body_env = ssos_combine(body_maps).data();
  double const surface_peak = object.select(surface_env, 0.0).maxCoeff();
  double const body_mean = object.select(body_env, 0.0).sum() / static_cast<double>(object.count());
  surface_maps.data() /= surface_peak;
  body_maps.data() /= body_mean;

  Acquisition acq;
  acq.mask = mask;
  acq.surface_images = modulate(surface_maps, x);
  ComplexVolume const body_images = modulate(body_maps, x);

  acq.kspace = fft_centered(acq.surface_images);
  apply_mask(mask, acq.kspace);
  add_noise(acq.kspace, mask, sigma, seed);

  acq.prescan.body = low_resolution(body_images, prescan_n);
  acq.prescan.surface = low_resolution(acq.surface_images, prescan_n);

  acq.truth.image = x;
  acq.truth.g_true = ssos_combine(surface_maps);
  acq.truth.surface_maps = true_set(std::move(surface_maps));
  acq.truth.body_maps = true_set(std::move(body_maps));
  acq.ssos_maps = estimate_ssos_maps(acq.surface_images);
  return acq;
}

Acquisition simulate(Scenario const &scenario)
{
  ComplexVolume const x = make_phantom(scenario.phantom);
  SamplingMask const mask = scenario.mask.make(x.shape());
  return simulate_acquisition(x, scenario.surface_coils, scenario.body_coils, mask, scenario.sigma, scenario.seed,
                              scenario.prescan_matrix);
}

} // namespace scc
