#include "scc/correction.hpp"

namespace scc {

namespace {

Index axis_stride(Shape const &s, int axis)
{
  return axis == 0 ? 1 : axis == 1 ? s.nx : s.nx * s.ny;
}

std::vector<int> active_axes(Shape const &s)
{
  std::vector<int> axes;
  for (int a = 0; a < 3; ++a) {
    if (s.extent(a) > 1) {
      axes.push_back(a);
    }
  }
  return axes;
}

void require_single_real(RealVolume const &v, char const *what)
{
  if (v.coils() != 1 || v.data().size() != v.shape().size()) {
    throw ShapeError(std::string(what) + ": expected a single-channel volume, got " + to_string(v.shape()));
  }
}

} // namespace

void SccConfig::validate() const
{
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("scc: lambda must be a positive finite number");
  }
  if (!(fit_mask_threshold >= 0.0 && fit_mask_threshold < 1.0)) {
    throw ConfigError("scc: fit_mask_threshold must lie in [0, 1)");
  }
  cg.validate();
}

GradientField gradient_forward(RealVolume const &map)
{
  require_single_real(map, "gradient_forward");
  Shape const &s = map.shape();
  GradientField g;
  g.axes = active_axes(s);
  for (int axis : g.axes) {
    RealVolume d = map.like<double>(1);
    Index const st = axis_stride(s, axis);
    Index const n = s.extent(axis);
    auto const &m = map.data();
    Index i = 0;
    for (Index z = 0; z < s.nz; ++z) {
      for (Index y = 0; y < s.ny; ++y) {
        for (Index x = 0; x < s.nx; ++x, ++i) {
          Index const pos = axis == 0 ? x : axis == 1 ? y : z;
          d[i] = pos + 1 < n ? m[i + st] - m[i] : 0.0;
        }
      }
    }
    g.components.push_back(std::move(d));
  }
  return g;
}

RealVolume gradient_adjoint(GradientField const &field)
{
  if (field.components.empty() || field.components.size() != field.axes.size()) {
    throw ShapeError("gradient_adjoint: empty or inconsistent gradient field");
  }
  RealVolume out = field.components.front().like<double>(1);
  Shape const &s = out.shape();
  for (std::size_t c = 0; c < field.axes.size(); ++c) {
    int const axis = field.axes[c];
    auto const &p = field.components[c].data();
    if (!(field.components[c].shape() == s)) {
      throw ShapeError("gradient_adjoint: component shapes differ");
    }
    Index const st = axis_stride(s, axis);
    Index const n = s.extent(axis);
    Index i = 0;
    for (Index z = 0; z < s.nz; ++z) {
      for (Index y = 0; y < s.ny; ++y) {
        for (Index x = 0; x < s.nx; ++x, ++i) {
          Index const pos = axis == 0 ? x : axis == 1 ? y : z;
          double v = 0.0;
          if (pos > 0) {
            v += p[i - st];
          }
          if (pos + 1 < n) {
            v -= p[i];
          }
          out[i] += v;
        }
      }
    }
  }
  return out;
}

void add_smoothness_normal(Shape const &s, double lambda, Eigen::Ref<Eigen::VectorXd const> m,
                           Eigen::Ref<Eigen::VectorXd> out)
{
  Index const sy = s.nx;
  Index const sz = s.nx * s.ny;
  Index i = 0;
  for (Index z = 0; z < s.nz; ++z) {
    for (Index y = 0; y < s.ny; ++y) {
      for (Index x = 0; x < s.nx; ++x, ++i) {
        double const c = m[i];
        double acc = 0.0;
        if (x > 0) acc += c - m[i - 1];
        if (x + 1 < s.nx) acc += c - m[i + 1];
        if (y > 0) acc += c - m[i - sy];
        if (y + 1 < s.ny) acc += c - m[i + sy];
        if (z > 0) acc += c - m[i - sz];
        if (z + 1 < s.nz) acc += c - m[i + sz];
        out[i] += lambda * acc;
      }
    }
  }
}

double correction_objective(RealVolume const &design, RealVolume const &target, RealVolume const &map,
                            double lambda)
{
  require_same_shape(design, target, "correction_objective");
  require_same_shape(design, map, "correction_objective");
  double data = (design.data() * map.data() - target.data()).matrix().squaredNorm();
  double smooth = 0.0;
  for (auto const &d : gradient_forward(map).components) {
    smooth += d.data().matrix().squaredNorm();
  }
  return data + lambda * smooth;
}

MapFit fit_correction(RealVolume const &design, RealVolume const &target, SccConfig const &cfg, MapKind kind)
{
  cfg.validate();
  require_single_real(design, "fit_correction");
  require_same_shape(design, target, "fit_correction");
  if (!design.data().isFinite().all() || !target.data().isFinite().all()) {
    throw DomainError("fit_correction: non-finite input");
  }
  if ((design.data() < 0.0).any() || (target.data() < 0.0).any()) {
    throw DomainError("fit_correction: inputs must be nonnegative");
  }
  double const peak = design.data().maxCoeff();
  if (!(peak > 0.0)) {
    throw DomainError("fit_correction: all-zero design volume");
  }

  Eigen::VectorXd weight = design.data().matrix();
  if (cfg.fit_mask_threshold > 0.0) {
    double const floor = cfg.fit_mask_threshold * peak;
    weight = (weight.array() < floor).select(0.0, weight.array()).matrix();
  }
  Eigen::VectorXd const weight2 = weight.array().square().matrix();
  Eigen::VectorXd const rhs = (weight.array() * target.data()).matrix();
  Shape const shape = design.shape();
  double const lambda = cfg.lambda;

  auto normal_op = [&](Eigen::VectorXd const &m) {
    Eigen::VectorXd out = (weight2.array() * m.array()).matrix();
    add_smoothness_normal(shape, lambda, m, out);
    return out;
  };
  auto const cg = cg_solve<double>(normal_op, rhs, cfg.cg);

  MapFit fit;
  fit.iterations = cg.iterations;
  fit.final_residual = cg.final_residual;
  fit.unclamped = design.like<double>(1);
  fit.unclamped.data() = cg.solution.array();
  fit.map.kind = kind;
  fit.map.values = fit.unclamped;
  fit.map.values.data() = fit.unclamped.data().max(0.0);
  return fit;
}

CorrectionMap estimate_g_map(RealVolume const &x_bc, RealVolume const &x_sc, SccConfig const &cfg)
{
  return fit_correction(x_bc, x_sc, cfg, MapKind::GMap).map;
}

CorrectionMap estimate_h_map(RealVolume const &x_bc, RealVolume const &x_sc, SccConfig const &cfg)
{
  return fit_correction(x_sc, x_bc, cfg, MapKind::HMap).map;
}

} // namespace scc
