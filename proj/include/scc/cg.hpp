#pragma once

#include <cmath>
#include <iostream>
#include <vector>

#include <Eigen/Core>

#include "scc/error.hpp"

namespace scc {

struct CgConfig
{
  int max_iters = 500;
  double rel_tol = 1e-6;
  /// Log the residual every this many iterations to std::clog; 0 disables.
  int report_every = 0;

  void validate() const
  {
    if (max_iters < 1) {
      throw ConfigError("cg: max_iters must be >= 1");
    }
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
      throw ConfigError("cg: rel_tol must lie in (0, 1)");
    }
  }
};

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct CgResult
{
  VectorX<Scalar> solution;
  int iterations = 0;
  /// ||op(solution) - rhs|| / ||rhs||
  double final_residual = 0.0;
  /// Relative residual after every iteration (entry 0 is the start).
  std::vector<double> residual_history;
};

/// Conjugate gradients for a Hermitian positive (semi)definite operator,
/// started from zero. Stops when the relative residual reaches cfg.rel_tol or
/// after cfg.max_iters iterations. The stopping test is confirmed against the
/// explicitly recomputed residual, so the reported residual is the true one.
template <typename Scalar, typename NormalOp>
CgResult<Scalar> cg_solve(NormalOp const &op, VectorX<Scalar> const &rhs, CgConfig const &cfg)
{
  cfg.validate();
  CgResult<Scalar> result;
  result.solution = VectorX<Scalar>::Zero(rhs.size());
  double const bnorm = rhs.norm();
  if (!std::isfinite(bnorm)) {
    throw DivergenceError("cg: right-hand side is not finite");
  }
  result.residual_history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
  if (bnorm == 0.0) {
    return result;
  }

  auto &x = result.solution;
  VectorX<Scalar> r = rhs;
  VectorX<Scalar> p = r;
  double rr = r.squaredNorm();
  double const target = cfg.rel_tol * bnorm;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    VectorX<Scalar> const q = op(p);
    double const pq = std::real(p.dot(q));
    if (!std::isfinite(pq)) {
      throw DivergenceError("cg: non-finite curvature at iteration " + std::to_string(it));
    }
    if (pq <= 0.0) {
      // Search direction in the null space; the iterate cannot improve.
      break;
    }
    double const alpha = rr / pq;
    x += alpha * p;
    r -= alpha * q;
    double rr_new = r.squaredNorm();
    if (!std::isfinite(rr_new)) {
      throw DivergenceError("cg: non-finite residual at iteration " + std::to_string(it));
    }
    result.iterations = it;

    bool restart = false;
    if (std::sqrt(rr_new) <= target) {
      r = rhs - op(x);
      rr_new = r.squaredNorm();
      restart = true;
    }
    result.residual_history.push_back(std::sqrt(rr_new) / bnorm);
    if (cfg.report_every > 0 && it % cfg.report_every == 0) {
      std::clog << "cg " << it << ": relative residual " << std::sqrt(rr_new) / bnorm << '\n';
    }
    if (std::sqrt(rr_new) <= target) {
      break;
    }
    if (restart) {
      p = r;
    } else {
      p = r + (rr_new / rr) * p;
    }
    rr = rr_new;
  }
  result.final_residual = (rhs - op(x)).norm() / bnorm;
  return result;
}

} // namespace scc
