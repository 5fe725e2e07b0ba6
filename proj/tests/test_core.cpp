#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "scc/metrics.hpp"
#include "scc/types.hpp"

using namespace scc;

TEST_CASE("volume construction checks the data length")
{
  CHECK_THROWS_AS(ComplexVolume(Shape{4, 4, 1, 2}, ComplexVolume::Data::Zero(31)), ShapeError);
  ComplexVolume v(Shape{4, 4, 1, 2});
  CHECK(v.data().size() == 32);
  CHECK(v.index(1, 2, 0, 1) == 1 + 4 * 2 + 16);
}

TEST_CASE("domain tag survives copies")
{
  ComplexVolume v(Shape{2, 2, 1, 1}, Domain::KSpace);
  ComplexVolume const w = v;
  CHECK(w.domain() == Domain::KSpace);
}

TEST_CASE("nmse examples")
{
  ComplexVolume const x = oracle::random_complex({5, 4, 3, 1});
  CHECK(nmse(x, x) == kNmseFloorDb);

  ComplexVolume zero = x;
  zero.data().setZero();
  CHECK(nmse(x, zero) == doctest::Approx(0.0).epsilon(1e-12));

  ComplexVolume twice = x;
  twice.data() *= 2.0;
  CHECK(std::abs(nmse(x, twice)) < 1e-9);
}

TEST_CASE("nmse of scaled copies follows the closed form")
{
  ComplexVolume const x = oracle::random_complex({6, 6, 1, 1});
  for (double alpha : {0.0, 2.0, 0.5, 1.25}) {
    ComplexVolume y = x;
    y.data() *= alpha;
    CHECK(std::abs(nmse(x, y) - 20.0 * std::log10(std::abs(1.0 - alpha))) < 1e-9);
  }
}

TEST_CASE("nmse is invariant to a global phase")
{
  ComplexVolume x = oracle::random_complex({6, 5, 1, 1});
  ComplexVolume y = oracle::random_complex({6, 5, 1, 1});
  double const before = nmse(x, y);
  Complex const rot = std::polar(1.0, 0.7);
  x.data() *= rot;
  y.data() *= rot;
  CHECK(std::abs(nmse(x, y) - before) < 1e-10);
}

TEST_CASE("nmse errors")
{
  ComplexVolume const zero(Shape{3, 3, 1, 1});
  CHECK_THROWS_AS(nmse(zero, zero), DomainError);
  CHECK_THROWS_AS(nmse(ComplexVolume(Shape{3, 3, 1, 1}), ComplexVolume(Shape{3, 2, 1, 1})), ShapeError);
}

TEST_CASE("elementwise_scale examples")
{
  ComplexVolume x(Shape{2, 1, 1, 1});
  x[0] = {1.0, 2.0};
  x[1] = {3.0, 0.0};
  RealVolume m(Shape{2, 1, 1, 1});
  m[0] = 2.0;
  m[1] = 0.5;
  ComplexVolume const y = elementwise_scale(x, m);
  CHECK(y[0] == Complex(2.0, 4.0));
  CHECK(y[1] == Complex(1.5, 0.0));

  ComplexVolume const r = oracle::random_complex({4, 4, 2, 3}, Domain::KSpace);
  RealVolume ones(Shape{4, 4, 2, 1});
  ones.data().setOnes();
  CHECK((elementwise_scale(r, ones).data() == r.data()).all());
  CHECK(elementwise_scale(r, ones).domain() == Domain::KSpace);
  RealVolume zeros(Shape{4, 4, 2, 1});
  CHECK(elementwise_scale(r, zeros).data().abs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(elementwise_scale(r, RealVolume(Shape{4, 3, 2, 1})), ShapeError);
}

TEST_CASE("elementwise_scale by a map and its reciprocal is the identity")
{
  ComplexVolume const x = oracle::random_complex({5, 5, 2, 2});
  RealVolume const m = oracle::random_real({5, 5, 2, 1}, 0.1, 3.0);
  RealVolume inv = m;
  inv.data() = 1.0 / m.data();
  ComplexVolume const back = elementwise_scale(elementwise_scale(x, m), inv);
  CHECK((back.data() - x.data()).abs().maxCoeff() <= 1e-12 * x.data().abs().maxCoeff());
}

TEST_CASE("validate_volume reports violations")
{
  ComplexVolume good = oracle::random_complex({3, 3, 1, 1});
  CHECK(validate_volume(good).empty());

  good[4] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  auto errors = validate_volume(good);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "non-finite at index 4");

  ComplexVolume bad(Shape{3, 3, 1, 1});
  bad.data().resize(8);
  errors = validate_volume(bad);
  REQUIRE(!errors.empty());
  CHECK(errors[0].rfind("length mismatch", 0) == 0);

  ComplexVolume thin(Shape{2, 2, 1, 1});
  thin.geometry().voxel_size_mm.x() = 0.0;
  CHECK(validate_volume(thin).size() == 1);
}

TEST_CASE("sampling mask")
{
  Shape const grid{8, 8, 1, 1};
  CHECK(SamplingMask::full(grid).count() == 64);
  SamplingMask const half = SamplingMask::uniform(grid, 2);
  CHECK(half.count() == 32);
  CHECK(half[4 + 8 * 4]);
  CHECK_THROWS_AS(SamplingMask(grid, BoolArray::Constant(64, false)), Error);
}

TEST_CASE("plane validation")
{
  PlaneSpec p;
  p.rows = 4;
  p.cols = 4;
  CHECK_NOTHROW(p.validate());
  p.row_dir = Eigen::Vector3d(1.0, 1.0, 0.0).normalized();
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.row_dir = Eigen::Vector3d::UnitY();
  p.col_spacing_mm = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("map kind names")
{
  CHECK(parse_map_kind("g") == MapKind::GMap);
  CHECK(parse_map_kind("h") == MapKind::HMap);
  CHECK_THROWS_AS(parse_map_kind("x"), ConfigError);
}
