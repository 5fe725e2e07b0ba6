#include <doctest.h>

#include "oracles.hpp"
#include "scc/coil_combine.hpp"
#include "scc/forward_model.hpp"
#include "scc/metrics.hpp"
#include "scc/recon.hpp"

using namespace scc;

namespace {

SensitivitySet maps_from(ComplexVolume m)
{
  SensitivitySet s;
  s.support = BoolArray::Constant(m.shape().voxels(), true);
  s.maps = std::move(m);
  return s;
}

SensitivitySet normalized_maps(Shape grid, Index k)
{
  ComplexVolume m = oracle::random_complex(grid.with_coils(k));
  for (Index v = 0; v < grid.voxels(); ++v) {
    double ss = 0.0;
    for (Index c = 0; c < k; ++c) {
      ss += std::norm(m.coil(c)[v]);
    }
    for (Index c = 0; c < k; ++c) {
      m.coil(c)[v] /= std::sqrt(ss);
    }
  }
  return maps_from(m);
}

ReconConfig tight(double tol = 1e-12)
{
  ReconConfig cfg;
  cfg.cg.rel_tol = tol;
  cfg.cg.max_iters = 2000;
  return cfg;
}

double rel(ComplexVolume const &a, ComplexVolume const &b)
{
  return (a.data() - b.data()).matrix().norm() / b.data().matrix().norm();
}

CorrectionMap constant_map(Shape grid, double value)
{
  CorrectionMap g{RealVolume(grid.spatial()), MapKind::GMap};
  g.values.data().setConstant(value);
  return g;
}

} // namespace

TEST_CASE("fully sampled noiseless data with normalized true maps recovers the image")
{
  Shape const grid{12, 10, 1, 1};
  SensitivitySet const s = normalized_maps(grid, 3);
  SamplingMask const mask = SamplingMask::full(grid);
  ComplexVolume const x = oracle::random_complex(grid);
  ComplexVolume const y = apply_forward({s, mask}, x);
  ReconResult const r = reconstruct_detailed(y, s, mask, ReconConfig{});
  CHECK((r.image.data() - x.data()).abs().maxCoeff() <= 1e-8);
  CHECK(r.image.domain() == Domain::Image);
}

TEST_CASE("zero data reconstructs to zero")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = normalized_maps(grid, 2);
  ReconResult const r =
      reconstruct_detailed(ComplexVolume(grid.with_coils(2), Domain::KSpace), s, SamplingMask::full(grid), ReconConfig{});
  CHECK(r.image.data().abs().maxCoeff() == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("8x8 two-coil rate-2 recon matches a dense pseudo-inverse")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(2)));
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume y = oracle::random_complex(grid.with_coils(2), Domain::KSpace);
  apply_mask(mask, y);
  ComplexVolume const x = reconstruct(y, s, mask, tight());
  oracle::VectorXc const dense = oracle::pinv_solve(oracle::encoding_matrix(s.maps, mask), oracle::pack(y, mask));
  CHECK((x.data().matrix() - dense).norm() <= 1e-6 * dense.norm());
}

TEST_CASE("noise sigma cancels without image regularization")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(3)));
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume y = oracle::random_complex(grid.with_coils(3), Domain::KSpace);
  apply_mask(mask, y);
  ReconConfig a = tight();
  ReconConfig b = tight();
  b.noise_sigma = 3.0;
  CHECK(rel(reconstruct(y, s, mask, b), reconstruct(y, s, mask, a)) <= 1e-9);
}

TEST_CASE("Tikhonov recon matches the dense regularized solve")
{
  Shape const grid{6, 6, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(2)));
  SamplingMask const mask = SamplingMask::uniform(grid, 3);
  ComplexVolume y = oracle::random_complex(grid.with_coils(2), Domain::KSpace);
  apply_mask(mask, y);
  ReconConfig cfg = tight();
  cfg.image_reg_lambda = 0.2;
  cfg.noise_sigma = 0.5;
  oracle::MatrixXc const a = oracle::encoding_matrix(s.maps, mask);
  oracle::MatrixXc h = a.adjoint() * a / 0.25;
  h.diagonal().array() += 0.2;
  oracle::VectorXc const dense = h.ldlt().solve(a.adjoint() * oracle::pack(y, mask) / 0.25);
  CHECK((reconstruct(y, s, mask, cfg).data().matrix() - dense).norm() <= 1e-9 * dense.norm());
}

TEST_CASE("unit correction map changes nothing")
{
  Shape const grid{10, 8, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(2)));
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume const y = apply_forward({s, mask}, oracle::random_complex(grid));
  ComplexVolume const plain = reconstruct(y, s, mask, ReconConfig{});
  ComplexVolume const corrected = reconstruct_corrected(y, s, mask, constant_map(grid, 1.0), ReconConfig{});
  CHECK((plain.data() == corrected.data()).all());
}

TEST_CASE("correcting SSoS maps by the true envelope recovers the image")
{
  Shape const grid{16, 16, 1, 1};
  ComplexVolume const truth = oracle::random_complex(grid.with_coils(4));
  ComplexVolume x(grid);
  for (Index i = 0; i < grid.voxels(); ++i) {
    x[i] = oracle::uniform(0.2, 1.0);
  }
  ComplexVolume coils = truth;
  for (Index k = 0; k < 4; ++k) {
    coils.coil(k) *= x.data();
  }
  SensitivitySet const ssos = estimate_ssos_maps(coils);
  CorrectionMap const g{ssos_combine(truth), MapKind::GMap};
  SamplingMask const mask = SamplingMask::full(grid);
  ComplexVolume const y = apply_forward({maps_from(truth), mask}, x);
  ComplexVolume const xg = reconstruct_corrected(y, ssos, mask, g, tight(1e-10));
  CHECK((xg.data() - x.data()).abs().maxCoeff() <= 1e-6);
}

TEST_CASE("SSoS maps reproduce the SSoS image")
{
  Shape const grid{16, 12, 1, 1};
  ComplexVolume const truth = oracle::random_complex(grid.with_coils(3));
  ComplexVolume const x = oracle::random_complex(grid);
  ComplexVolume coils = truth;
  for (Index k = 0; k < 3; ++k) {
    coils.coil(k) *= x.data();
  }
  SensitivitySet const ssos = estimate_ssos_maps(coils);
  SamplingMask const mask = SamplingMask::full(grid);
  ComplexVolume const y = apply_forward({maps_from(truth), mask}, x);
  ComplexVolume const xhat = reconstruct(y, ssos, mask, tight(1e-10));
  CHECK((xhat.data().abs() - ssos_combine(coils).data()).abs().maxCoeff() <= 1e-8);
}

TEST_CASE("recon is linear in the data")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(3)));
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume y1 = oracle::random_complex(grid.with_coils(3), Domain::KSpace);
  ComplexVolume y2 = oracle::random_complex(grid.with_coils(3), Domain::KSpace);
  apply_mask(mask, y1);
  apply_mask(mask, y2);
  Complex const a(0.5, 1.0);
  Complex const b(-2.0, 0.3);
  ComplexVolume combo = y1;
  combo.data() = a * y1.data() + b * y2.data();
  for (double lambda : {0.0, 0.1}) {
    ReconConfig cfg = tight();
    cfg.image_reg_lambda = lambda;
    ComplexVolume expected = y1.like();
    expected.data() = a * reconstruct(y1, s, mask, cfg).data() + b * reconstruct(y2, s, mask, cfg).data();
    CHECK(rel(reconstruct(combo, s, mask, cfg), expected) <= 1e-8);
  }
}

TEST_CASE("stronger Tikhonov weight never grows the image")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = maps_from(oracle::random_complex(grid.with_coils(2)));
  SamplingMask const mask = SamplingMask::uniform(grid, 2);
  ComplexVolume const y = apply_forward({s, mask}, oracle::random_complex(grid));
  double previous = std::numeric_limits<double>::infinity();
  for (double lambda : {0.01, 0.1, 1.0}) {
    ReconConfig cfg = tight();
    cfg.image_reg_lambda = lambda;
    double const n = reconstruct(y, s, mask, cfg).data().matrix().norm();
    CHECK(n <= previous);
    previous = n;
  }
}

TEST_CASE("image correction examples")
{
  Shape const grid{5, 4, 1, 1};
  ComplexVolume const x = oracle::random_complex(grid);
  CorrectionMap h = constant_map(grid, 1.0);
  h.kind = MapKind::HMap;
  CHECK((apply_image_correction(x, h).data() == x.data()).all());
  CHECK(apply_image_correction(x, constant_map(grid, 0.0)).data().abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(apply_image_correction(x, constant_map(Shape{4, 4, 1, 1}, 1.0)), ShapeError);
}

TEST_CASE("recon argument checks")
{
  Shape const grid{8, 8, 1, 1};
  SensitivitySet const s = normalized_maps(grid, 2);
  SamplingMask const mask = SamplingMask::full(grid);
  ComplexVolume const y(grid.with_coils(2), Domain::KSpace);
  ReconConfig bad;
  bad.noise_sigma = 0.0;
  CHECK_THROWS_AS(reconstruct(y, s, mask, bad), ConfigError);
  bad = ReconConfig{};
  bad.image_reg_lambda = -1.0;
  CHECK_THROWS_AS(reconstruct(y, s, mask, bad), ConfigError);
  CHECK_THROWS_AS(reconstruct(ComplexVolume(grid.with_coils(3), Domain::KSpace), s, mask, ReconConfig{}), ShapeError);
  CHECK_THROWS_AS(reconstruct(y, s, SamplingMask::full(Shape{8, 4, 1, 1}), ReconConfig{}), ShapeError);
  CHECK_THROWS_AS(reconstruct_corrected(y, s, mask, constant_map(Shape{4, 4, 1, 1}, 1.0), ReconConfig{}), ShapeError);
}
