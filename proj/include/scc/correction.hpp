#pragma once

#include <vector>

#include "scc/cg.hpp"
#include "scc/types.hpp"

namespace scc {

struct SccConfig
{
  double lambda = 5e-2;
  CgConfig cg{2000};
  /// Data weights below this fraction of the design maximum are zeroed.
  /// 0 keeps every voxel with its own weight.
  double fit_mask_threshold = 0.0;

  void validate() const;
};

/// First-order forward differences along every axis of extent > 1.
struct GradientField
{
  std::vector<int> axes;
  std::vector<RealVolume> components;
};

/// d[v] = m[v + e] - m[v]; the last sample along each axis gets 0.
GradientField gradient_forward(RealVolume const &map);

/// Exact adjoint of gradient_forward.
RealVolume gradient_adjoint(GradientField const &field);

/// grad^T grad m, evaluated in one pass.
void add_smoothness_normal(Shape const &shape, double lambda, Eigen::Ref<Eigen::VectorXd const> m,
                           Eigen::Ref<Eigen::VectorXd> out);

/// ||diag(design) m - target||^2 + lambda ||grad m||^2
double correction_objective(RealVolume const &design, RealVolume const &target,
                            RealVolume const &map, double lambda);

struct MapFit
{
  CorrectionMap map;    // clamped at zero
  RealVolume unclamped; // raw normal-equation solution
  int iterations = 0;
  double final_residual = 0.0;
};

/// Solves (diag(design)^2 + lambda grad^T grad) m = design * target with CG.
MapFit fit_correction(RealVolume const &design, RealVolume const &target, SccConfig const &cfg,
                      MapKind kind);

/// g = argmin ||X_bc g - x_sc||^2 + lambda ||grad g||^2
CorrectionMap estimate_g_map(RealVolume const &x_bc, RealVolume const &x_sc, SccConfig const &cfg);

/// h = argmin ||X_sc h - x_bc||^2 + lambda ||grad h||^2
CorrectionMap estimate_h_map(RealVolume const &x_bc, RealVolume const &x_sc, SccConfig const &cfg);

} // namespace scc
