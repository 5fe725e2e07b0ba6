#include "scc/prescan.hpp"

#include <cmath>
#include <numbers>

#include "scc/coil_combine.hpp"
#include "scc/fft.hpp"

namespace scc {

void PrescanPair::validate() const
{
  if (body.coils() < 1 || surface.coils() < 1) {
    throw ShapeError("prescan: both stacks need at least one coil");
  }
  if (!body.shape().same_grid(surface.shape())) {
    throw ShapeError("prescan: body grid " + to_string(body.shape()) + " differs from surface grid " +
                     to_string(surface.shape()));
  }
  if (body.domain() != Domain::Image || surface.domain() != Domain::Image) {
    throw DomainError("prescan: stacks must be image-domain volumes");
  }
}

std::vector<double> tukey_window_1d(Index n, double alpha)
{
  if (n < 1) {
    throw ConfigError("tukey: length must be >= 1");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("tukey: alpha must lie in [0, 1]");
  }
  std::vector<double> w(n, 1.0);
  if (n == 1 || alpha == 0.0) {
    return w;
  }
  // Even lengths use the first n samples of the symmetric (n + 1)-point
  // window, which puts the peak on sample n / 2.
  Index const m = n % 2 == 0 ? n + 1 : n;
  double const span = static_cast<double>(m - 1);
  double const pi = std::numbers::pi;
  if (alpha >= 1.0) {
    for (Index i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) / span);
    }
    return w;
  }
  Index const width = static_cast<Index>(std::floor(alpha * span / 2.0));
  for (Index i = 0; i < n; ++i) {
    double const t = static_cast<double>(i);
    if (i <= width) {
      w[i] = 0.5 * (1.0 + std::cos(pi * (-1.0 + 2.0 * t / alpha / span)));
    } else if (i >= m - width - 1) {
      w[i] = 0.5 * (1.0 + std::cos(pi * (-2.0 / alpha + 1.0 + 2.0 * t / alpha / span)));
    }
  }
  return w;
}

ComplexVolume apodize_kspace(ComplexVolume const &v, double alpha)
{
  if (v.domain() != Domain::KSpace) {
    throw DomainError("apodize_kspace: input is not k-space");
  }
  Shape const &s = v.shape();
  auto const wx = tukey_window_1d(s.nx, alpha);
  auto const wy = tukey_window_1d(s.ny, alpha);
  auto const wz = tukey_window_1d(s.nz, alpha);
  ComplexVolume out = v;
  for (Index c = 0; c < s.ncoil; ++c) {
    for (Index z = 0; z < s.nz; ++z) {
      for (Index y = 0; y < s.ny; ++y) {
        double const wyz = wy[y] * wz[z];
        for (Index x = 0; x < s.nx; ++x) {
          out(x, y, z, c) *= wx[x] * wyz;
        }
      }
    }
  }
  return out;
}

ComplexVolume zeropad_kspace(ComplexVolume const &v, std::array<Index, 3> const &pad_to)
{
  if (v.domain() != Domain::KSpace) {
    throw DomainError("zeropad_kspace: input is not k-space");
  }
  Shape const &s = v.shape();
  std::array<Index, 3> offset{};
  for (int a = 0; a < 3; ++a) {
    if (pad_to[a] < s.extent(a)) {
      throw ConfigError("zeropad_kspace: target " + std::to_string(pad_to[a]) + " smaller than extent " +
                        std::to_string(s.extent(a)) + " on axis " + std::to_string(a));
    }
    offset[a] = pad_to[a] / 2 - s.extent(a) / 2;
  }
  Geometry geometry = v.geometry();
  for (int a = 0; a < 3; ++a) {
    geometry.voxel_size_mm[a] *= static_cast<double>(s.extent(a)) / static_cast<double>(pad_to[a]);
  }
  ComplexVolume out(Shape{pad_to[0], pad_to[1], pad_to[2], s.ncoil}, Domain::KSpace, geometry);
  for (Index c = 0; c < s.ncoil; ++c) {
    for (Index z = 0; z < s.nz; ++z) {
      for (Index y = 0; y < s.ny; ++y) {
        for (Index x = 0; x < s.nx; ++x) {
          out(x + offset[0], y + offset[1], z + offset[2], c) = v(x, y, z, c);
        }
      }
    }
  }
  return out;
}

namespace {

RealVolume condition_stack(ComplexVolume const &stack, PrescanConfig const &cfg)
{
  ComplexVolume k = apodize_kspace(fft_centered(stack), cfg.tukey_alpha);
  if (cfg.pad_to) {
    k = zeropad_kspace(k, *cfg.pad_to);
  }
  return ssos_combine(ifft_centered(k));
}

} // namespace

ConditionedPrescan condition_prescan(PrescanPair const &pair, PrescanConfig const &cfg)
{
  pair.validate();
  ConditionedPrescan out{condition_stack(pair.body, cfg), condition_stack(pair.surface, cfg)};
  RealVolume const &reference = cfg.normalize == Normalization::ByBodyMax ? out.body : out.surface;
  double const peak = reference.data().maxCoeff();
  if (!(peak > 0.0)) {
    throw DomainError("condition_prescan: all-zero prescan");
  }
  out.body.data() /= peak;
  out.surface.data() /= peak;
  return out;
}

} // namespace scc
