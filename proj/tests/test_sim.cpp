#include <doctest.h>

#include "oracles.hpp"
#include "scc/coil_combine.hpp"
#include "scc/fft.hpp"
#include "scc/forward_model.hpp"
#include "scc/simulate.hpp"

using namespace scc;

namespace {

Eigen::Matrix3Xd axis_points(CoilGeometry const &coil, std::vector<double> const &d)
{
  Eigen::Matrix3Xd p(3, Index(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    p.col(Index(i)) = coil.center_mm + d[i] * coil.axis;
  }
  return p;
}

Scenario small_scenario(Index n = 64)
{
  Scenario s;
  s.phantom = default_phantom(n, 256.0);
  s.prescan_matrix = 16;
  return s;
}

double relative_spread(Eigen::ArrayXd const &env, BoolArray const &object)
{
  double const mean = object.select(env, 0.0).sum() / double(object.count());
  double const var = object.select((env - mean).square(), 0.0).sum() / double(object.count());
  return std::sqrt(var) / mean;
}

} // namespace

TEST_CASE("on-axis field matches the closed form")
{
  CoilGeometry coil{Eigen::Vector3d(3.0, -2.0, 1.0), Eigen::Vector3d(1.0, 2.0, -0.5).normalized(), 40.0, 256};
  std::vector<double> const d = {0.0, 5.0, 20.0, 40.0, 80.0, 200.0};
  Eigen::Matrix3Xd const b = biot_savart_field(coil, axis_points(coil, d));
  for (std::size_t i = 0; i < d.size(); ++i) {
    double const expected = oracle::loop_on_axis_field(40.0, d[i]);
    CHECK(std::abs(b.col(Index(i)).norm() - expected) <= 1e-3 * expected);
    CHECK(std::abs(b.col(Index(i)).normalized().dot(coil.axis)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("on-axis field decays away from the loop")
{
  CoilGeometry coil{Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitZ(), 10.0, 256};
  std::vector<double> d;
  for (int i = 0; i <= 40; ++i) {
    d.push_back(0.5 * i);
  }
  Eigen::Matrix3Xd const b = biot_savart_field(coil, axis_points(coil, d));
  for (Index i = 1; i < b.cols(); ++i) {
    CHECK(b.col(i).norm() < b.col(i - 1).norm());
  }
}

TEST_CASE("segment refinement barely changes the maps")
{
  Scenario const s = small_scenario(64);
  ComplexVolume const x = make_phantom(s.phantom);
  for (CoilGeometry coil : {s.surface_coils[0], s.surface_coils[1], s.body_coils[0]}) {
    coil.segments = 256;
    ComplexVolume const coarse = biot_savart_map(coil, x.shape(), x.geometry());
    coil.segments = 512;
    ComplexVolume const fine = biot_savart_map(coil, x.shape(), x.geometry());
    CHECK(((coarse.data() - fine.data()).abs() / fine.data().abs()).maxCoeff() < 1e-4);
  }
}

TEST_CASE("maps stay finite on the wire")
{
  CoilGeometry coil{Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitY(), 10.0, 64};
  Eigen::Matrix3Xd p(3, 2);
  p.col(0) = Eigen::Vector3d(10.0, 0.0, 0.0);
  p.col(1) = Eigen::Vector3d(0.0, 0.0, 10.0);
  CHECK(biot_savart_field(coil, p).allFinite());

  Geometry g;
  g.voxel_size_mm = Eigen::Vector3d(2.0, 2.0, 2.0);
  CoilGeometry on_grid{Eigen::Vector3d(1.0, 1.0, 0.0), Eigen::Vector3d::UnitX(), 8.0, 256};
  ComplexVolume const m = biot_savart_map(on_grid, Shape{16, 16, 1, 1}, g);
  CHECK(m.data().allFinite());
  CHECK(m.data().abs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coil geometry validation")
{
  CoilGeometry c;
  c.axis = Eigen::Vector3d(1.0, 1.0, 0.0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = CoilGeometry{};
  c.radius_mm = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = CoilGeometry{};
  c.segments = 7;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("phantom rasterization")
{
  PhantomSpec spec;
  spec.nx = 32;
  spec.ny = 32;
  spec.fov_mm = {64.0, 64.0};
  CHECK(make_phantom(spec).data().abs().maxCoeff() == 0.0);

  spec.shapes = {PhantomShape{PhantomShape::Kind::Rectangle, {0.0, 0.0}, {32.0, 32.0}, 0.0, 1.0}};
  CHECK((make_phantom(spec).data() == Complex(1.0)).all());

  spec.nx = 128;
  spec.ny = 128;
  spec.fov_mm = {128.0, 128.0};
  double const r = 30.0;
  spec.shapes = {PhantomShape{PhantomShape::Kind::Ellipse, {0.0, 0.0}, {r, r}, 0.0, 0.5}};
  ComplexVolume const disk = make_phantom(spec);
  double const count = double((disk.data().abs() > 0.0).count());
  CHECK(std::abs(count - std::numbers::pi * r * r) <= 0.02 * std::numbers::pi * r * r);

  spec.shapes.push_back(PhantomShape{PhantomShape::Kind::Rectangle, {0.0, 0.0}, {5.0, 5.0}, 45.0, 0.25});
  ComplexVolume const layered = make_phantom(spec);
  CHECK(layered(64, 64) == Complex(0.25));
  CHECK(layered(64 + 20, 64) == Complex(0.5));
}

TEST_CASE("default phantom stays within [0, 1]")
{
  PhantomSpec const spec = default_phantom();
  CHECK(spec.nx == 256);
  CHECK(spec.shapes.size() == 7);
  ComplexVolume const x = make_phantom(spec);
  CHECK(x.data().real().minCoeff() >= 0.0);
  CHECK(x.data().real().maxCoeff() <= 1.0);
  CHECK(x.data().imag().abs().maxCoeff() == 0.0);
}

TEST_CASE("phantom validation")
{
  PhantomSpec spec = default_phantom(64);
  spec.nx = 8;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = default_phantom(64);
  spec.shapes[0].intensity = 1.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("noiseless fully sampled simulation is operator consistent")
{
  Acquisition const acq = simulate(small_scenario());
  ForwardModel const model{acq.truth.surface_maps, acq.mask};
  ComplexVolume const y = apply_forward(model, acq.truth.image);
  CHECK((y.data() - acq.kspace.data()).abs().maxCoeff() <= 1e-12);
  ComplexVolume const coil_images = ifft_centered(acq.kspace);
  CHECK((coil_images.data() - acq.surface_images.data()).abs().maxCoeff() <= 1e-10);

  // With maps normalized to unit sum of squares, A^H A is the identity.
  SensitivitySet normalized = acq.truth.surface_maps;
  Eigen::ArrayXd const env = ssos_combine(normalized.maps).data();
  for (Index k = 0; k < normalized.maps.coils(); ++k) {
    normalized.maps.coil(k) /= env;
  }
  ForwardModel const unit{normalized, acq.mask};
  ComplexVolume const back = apply_adjoint(unit, apply_forward(unit, acq.truth.image));
  CHECK((back.data() - acq.truth.image.data()).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("prescan is the central k-space block")
{
  Scenario const s = small_scenario();
  Acquisition const acq = simulate(s);
  CHECK(acq.prescan.surface.shape() == Shape{16, 16, 1, 4});
  CHECK(acq.prescan.body.shape() == Shape{16, 16, 1, 2});
  CHECK(acq.prescan.body.geometry().voxel_size_mm.x() == doctest::Approx(16.0));
  ComplexVolume const low = fft_centered(acq.prescan.surface);
  ComplexVolume const full = fft_centered(acq.surface_images);
  for (Index c = 0; c < 4; ++c) {
    CHECK(std::abs(low(8, 8, 0, c) - full(32, 32, 0, c)) <= 1e-10);
    CHECK(std::abs(low(3, 12, 0, c) - full(27, 36, 0, c)) <= 1e-10);
  }
}

TEST_CASE("same seed is bit identical, different seeds differ")
{
  Scenario s = small_scenario();
  s.sigma = 0.01;
  s.seed = 42;
  Acquisition const a = simulate(s);
  Acquisition const b = simulate(s);
  CHECK((a.kspace.data() == b.kspace.data()).all());
  CHECK((a.prescan.surface.data() == b.prescan.surface.data()).all());
  s.seed = 43;
  Acquisition const c = simulate(s);
  CHECK((a.kspace.data() != c.kspace.data()).any());
}

TEST_CASE("noise has the requested variance")
{
  Shape const grid{128, 128, 1, 2};
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume k(grid, Domain::KSpace);
  double const sigma = 0.3;
  add_noise(k, mask, sigma, 7);
  double sr = 0.0;
  double si = 0.0;
  Index n = 0;
  for (Index c = 0; c < 2; ++c) {
    for (Index i = 0; i < grid.voxels(); ++i) {
      if (mask[i]) {
        sr += std::pow(k.coil(c)[i].real(), 2);
        si += std::pow(k.coil(c)[i].imag(), 2);
        ++n;
      } else {
        CHECK(k.coil(c)[i] == Complex{});
      }
    }
  }
  CHECK(n >= 10000);
  CHECK(std::abs(sr / double(n) - sigma * sigma) <= 0.05 * sigma * sigma);
  CHECK(std::abs(si / double(n) - sigma * sigma) <= 0.05 * sigma * sigma);
  CHECK_THROWS_AS(add_noise(k, mask, -1.0, 0), ConfigError);
}

TEST_CASE("body envelope is flatter than the surface envelope")
{
  Acquisition const acq = simulate(small_scenario(128));
  BoolArray const object = acq.truth.image.data().abs() > 0.0;
  double const body = relative_spread(ssos_combine(acq.truth.body_maps.maps).data(), object);
  double const surface = relative_spread(ssos_combine(acq.truth.surface_maps.maps).data(), object);
  CHECK(body < surface);
}

TEST_CASE("coil set scaling")
{
  Acquisition const acq = simulate(small_scenario());
  BoolArray const object = acq.truth.image.data().abs() > 0.0;
  Eigen::ArrayXd const s = ssos_combine(acq.truth.surface_maps.maps).data();
  Eigen::ArrayXd const b = ssos_combine(acq.truth.body_maps.maps).data();
  CHECK(object.select(s, 0.0).maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(object.select(b, 0.0).sum() / double(object.count()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(acq.truth.surface_maps.maps.data().allFinite());
  CHECK(acq.truth.body_maps.maps.data().allFinite());
}

TEST_CASE("SSoS maps times g_true match the true map magnitudes")
{
  Acquisition const acq = simulate(small_scenario());
  CHECK(acq.ssos_maps.check().empty());
  for (Index k = 0; k < 4; ++k) {
    for (Index v = 0; v < acq.truth.image.shape().voxels(); ++v) {
      if (acq.ssos_maps.support[v]) {
        double const lhs = std::abs(acq.ssos_maps.maps.coil(k)[v]) * acq.truth.g_true[v];
        CHECK(std::abs(lhs - std::abs(acq.truth.surface_maps.maps.coil(k)[v])) <= 1e-10);
      }
    }
  }
}

TEST_CASE("simulation argument checks")
{
  ComplexVolume const x = make_phantom(default_phantom(32, 128.0));
  auto const surface = default_surface_coils(128.0);
  auto const body = default_body_coils(128.0);
  CHECK_THROWS_AS(simulate_acquisition(x, surface, body, SamplingMask::full(Shape{16, 16, 1, 1}), 0.0, 0),
                  ShapeError);
  CHECK_THROWS_AS(simulate_acquisition(x, {}, body, SamplingMask::full(x.shape()), 0.0, 0), ConfigError);
  CHECK_THROWS_AS(simulate_acquisition(ComplexVolume(x.shape()), surface, body, SamplingMask::full(x.shape()), 0.0, 0),
                  DomainError);
}
