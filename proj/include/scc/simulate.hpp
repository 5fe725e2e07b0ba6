#pragma once

#include <cstdint>
#include <vector>

#include "scc/biot_savart.hpp"
#include "scc/phantom.hpp"
#include "scc/prescan.hpp"
#include "scc/types.hpp"

namespace scc {

/// Four loops of radius 0.2 fov centered on the field-of-view boundary at
/// 0, 90, 180 and 270 degrees, axes toward the image center.
std::vector<CoilGeometry> default_surface_coils(double fov_mm);

/// Two loops of radius fov above and below the object, axes toward the center.
std::vector<CoilGeometry> default_body_coils(double fov_mm);

struct MaskSpec
{
  enum class Kind
  {
    Full,
    Uniform
  };
  Kind kind = Kind::Full;
  Index rate = 1;
  int axis = 1;

  SamplingMask make(Shape const &grid) const;
};

struct Scenario
{
  PhantomSpec phantom = default_phantom();
  std::vector<CoilGeometry> surface_coils = default_surface_coils(256.0);
  std::vector<CoilGeometry> body_coils = default_body_coils(256.0);
  MaskSpec mask;
  Index prescan_matrix = 32;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct SimulationTruth
{
  ComplexVolume image;
  SensitivitySet surface_maps;
  SensitivitySet body_maps;
  /// SSoS envelope of the surface maps: the modulation SSoS estimation leaves
  /// in the reconstruction.
  RealVolume g_true;
};

struct Acquisition
{
  ComplexVolume kspace;
  SamplingMask mask;
  PrescanPair prescan;
  SimulationTruth truth;
  /// Noiseless full-resolution surface coil images S_k x.
  ComplexVolume surface_images;
  /// SSoS sensitivity estimate from surface_images.
  SensitivitySet ssos_maps;
};

/// Builds coil maps on the image grid, scales each coil set (surface: SSoS
/// peak over the object = 1, body: SSoS mean over the object = 1), forms coil
/// images, masked k-space with complex Gaussian noise (sigma per component,
/// deterministic in seed), and the central prescan_n x prescan_n k-space block
/// of every surface and body coil image as low-resolution image stacks.
Acquisition simulate_acquisition(ComplexVolume const &x, std::vector<CoilGeometry> const &surface,
                                 std::vector<CoilGeometry> const &body, SamplingMask const &mask,
                                 double sigma, std::uint64_t seed, Index prescan_n = 32);

Acquisition simulate(Scenario const &scenario);

/// Adds N(0, sigma^2) to the real and imaginary part of every masked sample.
/// Box-Muller on a std::mt19937_64 stream seeded with `seed`; samples are
/// visited coil by coil in storage order.
void add_noise(ComplexVolume &kspace, SamplingMask const &mask, double sigma, std::uint64_t seed);

} // namespace scc
