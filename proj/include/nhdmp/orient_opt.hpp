#pragma once

#include "nhdmp/so3.hpp"
#include "nhdmp/uk_constraint.hpp"

namespace nhdmp {

struct OptimizerConfig {
  double grad_eps = 1e-6;    // central-difference step, rad/s
  double tol_grad = 1e-8;    // gradient-norm stop
  int max_iters = 100;
  bool warm_start = true;    // start from w_warm, otherwise from zero
  double fcon_weight = 1.0;  // weight of |f_con|_2 in the loss
  double rotation_weight = 1.0;  // weight of |R_nominal - R_opt|_F
  double step_tol = 1e-12;   // relative step-length stop
  // When the run from the warm start leaves |f_con| above this threshold
  // the search is repeated from six starts rotated by +-pi/2 about the
  // world axes and the lowest loss wins. Negative disables restarts.
  double restart_fcon_threshold = 1e-6;

  void validate() const;
};

/// Everything needed to evaluate the orientation loss at one rollout step.
struct OrientationProblem {
  ConstraintSpec spec;
  Mat3 R_nominal;  // orientation to stay close to
  Mat3 R_prev;     // orientation at the start of the step
  Vec3 p_dot;
  Vec3 p_ddot_unc;
  double dt = 1e-3;
};

enum class OptStatus {
  GradientTolerance,  // |grad| <= tol_grad
  StepTolerance,      // accepted step shorter than step_tol (1 + |w|)
  NoDescent,          // line search cannot decrease the loss any further
  MaxIterations,      // NotConverged
};

const char* to_string(OptStatus s);

struct OptStepResult {
  Vec3 w_opt = Vec3::Zero();
  Mat3 R_opt = Mat3::Identity();
  double loss = 0.0;
  double f_con_norm = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  OptStatus status = OptStatus::GradientTolerance;

  bool converged() const noexcept { return status != OptStatus::MaxIterations; }
};

/// R_opt(w) = exp_map(w, dt) * R_prev.
Mat3 optimized_rotation(const OrientationProblem& pb, const Vec3& w);

/// L(w) = |f_con(w)|_2 + |R_nominal - R_opt(w)|_F, where f_con(w) is the
/// blade constraint force evaluated at R_opt(w) with angular velocity w.
double loss(const OrientationProblem& pb, const Vec3& w,
            const OptimizerConfig& cfg = {});

/// Central-difference gradient of loss() with step h.
Vec3 loss_gradient(const OrientationProblem& pb, const Vec3& w, double h,
                   const OptimizerConfig& cfg = {});

/// BFGS minimization of loss() started at w_warm (or zero when
/// cfg.warm_start is false), with restarts as described in
/// OptimizerConfig. `iterations` counts BFGS iterations over all starts.
/// Never throws on non-convergence; check status / converged().
/// Deterministic for fixed inputs.
OptStepResult optimize_step(const OrientationProblem& pb,
                            const OptimizerConfig& cfg, const Vec3& w_warm);

/// Throws NotConverged unless r.converged().
void require_converged(const OptStepResult& r);

}  // namespace nhdmp
