#include "scc/fft.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "scc/parallel.hpp"

namespace scc {

namespace {

// Transforms every line along `axis` of one coil in place.
void transform_axis(Complex *coil, Shape const &s, int axis, bool inverse, Eigen::FFT<double> &fft,
                    std::vector<Complex> &in, std::vector<Complex> &out)
{
  Index const n = s.extent(axis);
  if (n == 1) {
    return;
  }
  Index const stride = axis == 0 ? 1 : axis == 1 ? s.nx : s.nx * s.ny;
  Index const outer = axis == 2 ? 1 : s.nz;
  Index const inner_count = axis == 0 ? s.ny : axis == 1 ? s.nx : s.nx * s.ny;
  Index const half = n / 2;
  double const scale = 1.0 / std::sqrt(static_cast<double>(n));
  in.resize(n);
  out.resize(n);

  for (Index o = 0; o < outer; ++o) {
    for (Index l = 0; l < inner_count; ++l) {
      Index base;
      if (axis == 0) {
        base = o * s.nx * s.ny + l * s.nx;
      } else if (axis == 1) {
        base = o * s.nx * s.ny + l;
      } else {
        base = l;
      }
      Complex *line = coil + base;
      // ifftshift on the way in, fftshift on the way out.
      for (Index i = 0; i < n; ++i) {
        in[i] = line[((i + half) % n) * stride];
      }
      if (inverse) {
        fft.inv(out, in);
      } else {
        fft.fwd(out, in);
      }
      for (Index j = 0; j < n; ++j) {
        line[((j + half) % n) * stride] = out[j] * scale;
      }
    }
  }
}

ComplexVolume transform(ComplexVolume const &v, int dims, bool inverse)
{
  if (dims < 1 || dims > 3) {
    throw ConfigError("fft: dims must be 1, 2 or 3");
  }
  Domain const expected = inverse ? Domain::KSpace : Domain::Image;
  if (v.domain() != expected) {
    throw DomainError(inverse ? "ifft_centered: input is not k-space" : "fft_centered: input is not an image");
  }
  ComplexVolume out = v;
  out.set_domain(inverse ? Domain::Image : Domain::KSpace);
  Shape const s = v.shape();
  parallel_for(s.ncoil, [&](Index c) {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<Complex> in, buf;
    Complex *coil = out.data().data() + c * s.voxels();
    for (int axis = 0; axis < dims; ++axis) {
      transform_axis(coil, s, axis, inverse, fft, in, buf);
    }
  });
  return out;
}

} // namespace

ComplexVolume fft_centered(ComplexVolume const &v, int dims)
{
  return transform(v, dims, false);
}

ComplexVolume ifft_centered(ComplexVolume const &v, int dims)
{
  return transform(v, dims, true);
}

} // namespace scc
