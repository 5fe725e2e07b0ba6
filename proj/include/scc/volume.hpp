#pragma once

#include <complex>
#include <string>

#include <Eigen/Core>

#include "scc/error.hpp"

namespace scc {

using Index = Eigen::Index;
using Complex = std::complex<double>;

enum class Domain
{
  Image,
  KSpace
};

/// Extents of a volume. Unused axes have extent 1. Storage is x fastest,
/// then y, then z, coil slowest.
struct Shape
{
  Index nx = 1;
  Index ny = 1;
  Index nz = 1;
  Index ncoil = 1;

  Index voxels() const { return nx * ny * nz; }
  Index size() const { return voxels() * ncoil; }
  Index extent(int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }

  Shape spatial() const { return {nx, ny, nz, 1}; }
  Shape with_coils(Index k) const { return {nx, ny, nz, k}; }
  bool same_grid(Shape const &other) const
  {
    return nx == other.nx && ny == other.ny && nz == other.nz;
  }

  bool operator==(Shape const &) const = default;
};

std::string to_string(Shape const &shape);

struct Geometry
{
  Eigen::Vector3d voxel_size_mm = Eigen::Vector3d::Ones();
  /// World position of the volume center.
  Eigen::Vector3d origin_mm = Eigen::Vector3d::Zero();
};

/// Dense multi-coil volume. The scalar is `double` for real-valued maps and
/// combined images, `std::complex<double>` for images and k-space.
template <typename Scalar>
class Volume
{
public:
  using scalar_type = Scalar;
  using Data = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Volume() = default;

  explicit Volume(Shape shape, Domain domain = Domain::Image, Geometry geometry = {})
    : shape_(shape), data_(Data::Zero(shape.size())), domain_(domain), geometry_(geometry)
  {
  }

  Volume(Shape shape, Data data, Domain domain = Domain::Image, Geometry geometry = {})
    : shape_(shape), data_(std::move(data)), domain_(domain), geometry_(geometry)
  {
    if (data_.size() != shape_.size()) {
      throw ShapeError("length mismatch: data holds " + std::to_string(data_.size()) +
                       " samples, shape " + to_string(shape_) + " requires " +
                       std::to_string(shape_.size()));
    }
  }

  Shape const &shape() const { return shape_; }
  Index coils() const { return shape_.ncoil; }

  Domain domain() const { return domain_; }
  void set_domain(Domain d) { domain_ = d; }

  Geometry const &geometry() const { return geometry_; }
  Geometry &geometry() { return geometry_; }

  Data const &data() const { return data_; }
  Data &data() { return data_; }

  Index index(Index x, Index y, Index z = 0, Index c = 0) const
  {
    return x + shape_.nx * (y + shape_.ny * (z + shape_.nz * c));
  }

  Scalar &operator()(Index x, Index y, Index z = 0, Index c = 0) { return data_[index(x, y, z, c)]; }
  Scalar const &operator()(Index x, Index y, Index z = 0, Index c = 0) const
  {
    return data_[index(x, y, z, c)];
  }

  Scalar &operator[](Index i) { return data_[i]; }
  Scalar const &operator[](Index i) const { return data_[i]; }

  auto coil(Index c) { return data_.segment(c * shape_.voxels(), shape_.voxels()); }
  auto coil(Index c) const { return data_.segment(c * shape_.voxels(), shape_.voxels()); }

  /// Copy of one coil as a single-coil volume.
  Volume coil_volume(Index c) const
  {
    return Volume(shape_.spatial(), Data(coil(c)), domain_, geometry_);
  }

  /// Empty volume with the same grid, domain and geometry and `ncoil` coils.
  template <typename Other = Scalar>
  Volume<Other> like(Index ncoil = 1) const
  {
    return Volume<Other>(shape_.with_coils(ncoil), domain_, geometry_);
  }

private:
  Shape shape_;
  Data data_;
  Domain domain_ = Domain::Image;
  Geometry geometry_;
};

using ComplexVolume = Volume<Complex>;
using RealVolume = Volume<double>;

ComplexVolume to_complex(RealVolume const &v);
RealVolume real_part(ComplexVolume const &v);
RealVolume magnitude(ComplexVolume const &v);

template <typename Scalar>
void require_same_shape(Volume<Scalar> const &a, Volume<Scalar> const &b, char const *what)
{
  if (!(a.shape() == b.shape())) {
    throw ShapeError(std::string(what) + ": shape " + to_string(a.shape()) + " vs " +
                     to_string(b.shape()));
  }
}

} // namespace scc
