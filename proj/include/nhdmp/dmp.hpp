#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "nhdmp/canonical_forcing.hpp"
#include "nhdmp/orient_opt.hpp"
#include "nhdmp/so3.hpp"
#include "nhdmp/trajectory.hpp"
#include "nhdmp/uk_constraint.hpp"

namespace nhdmp {

struct DmpGains {
  double tau = 1.0;
  double alpha_x = 25.0;
  double beta_x = 6.25;
  double alpha_s = 1.0;

  void validate() const;
};

/// Trained pose primitive: a position DMP and an orientation DMP sharing
/// gains and phase.
struct DmpModel {
  DmpGains gains;
  double duration = 1.0;  // demonstration length used to place the bases
  std::array<ForcingTerm, 3> f_p;
  std::array<ForcingTerm, 3> f_q;
  Vec3 p0 = Vec3::Zero();
  Vec3 v0 = Vec3::Zero();
  Vec3 p_g = Vec3::Zero();
  Mat3 R0 = Mat3::Identity();
  Vec3 w0 = Vec3::Zero();
  Mat3 R_g = Mat3::Identity();

  void validate() const;
};

enum class RolloutMode { Nominal, Constrained, Optimized };

std::string_view to_string(RolloutMode m);
/// Accepts "nominal", "constrained", "optimized"; throws otherwise.
RolloutMode parse_mode(std::string_view name);

struct RolloutState {
  std::size_t step = 0;
  double t = 0.0;
  double s = 1.0;
  Vec3 p = Vec3::Zero();
  Vec3 p_dot = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 w = Vec3::Zero();
  // Unconstrained orientation DMP integrated alongside the rollout. The
  // optimized mode anchors its rotation-distance term to it; in the other
  // modes it coincides with (R, w).
  Mat3 R_ref = Mat3::Identity();
  Vec3 w_ref = Vec3::Zero();
};

/// Unconstrained translational acceleration
///   (alpha_x (beta_x (p_g - p) - tau p_dot) + f_p(s)) / tau.
Vec3 position_accel(const DmpModel& model, const RolloutState& st);

/// Angular acceleration of the orientation DMP at (R, w).
/// Propagates NearPiSingularity from log_map(R_g R^T).
Vec3 orientation_rate(const DmpModel& model, const Mat3& R, const Vec3& w,
                      double s);
inline Vec3 orientation_rate(const DmpModel& model, const RolloutState& st) {
  return orientation_rate(model, st.R, st.w, st.s);
}

struct StepDiagnostics {
  double violation = 0.0;   // c^T p_dot of the state the step started from
  double fcon_norm = 0.0;   // applied |f_con|; in nominal mode the force
                            // that would have been needed
  double accel_residual = 0.0;  // c^T (p_ddot_unc + f_con) - b, before
                                // integration (0 in nominal mode)
  double projection = 0.0;  // |c^T p_dot| removed by the drift projection
  double loss = 0.0;        // optimizer loss (optimized mode only)
  int opt_iters = 0;
};

struct StepResult {
  RolloutState next;
  StepDiagnostics diag;
};

/// Every this many steps R (and R_ref) are projected back onto SO(3).
inline constexpr std::size_t kReorthonormalizeEvery = 100;

/// Semi-implicit Euler step: velocities from accelerations first, then
/// positions from the new velocities, R' = exp_map(w', dt) R.
/// Constrained and optimized modes require |c^T p_dot| <= 1e-6 on entry.
StepResult step(const DmpModel& model, const RolloutState& st,
                RolloutMode mode, const ConstraintSpec& spec, double dt,
                const OptimizerConfig& cfg = {});

/// Initial rollout state. In constrained and optimized modes the start
/// velocity is projected onto the allowed plane; the removed lateral
/// speed is written to *pre_violation when given.
RolloutState initial_state(const DmpModel& model, RolloutMode mode,
                           const ConstraintSpec& spec,
                           double* pre_violation = nullptr);

struct Rollout {
  RolloutMode mode = RolloutMode::Nominal;
  PoseTrajectory trajectory;
  std::vector<RolloutState> states;
  std::vector<StepDiagnostics> diagnostics;  // one per sample
  double initial_violation = 0.0;            // before projection

  double max_abs_violation() const;
  double max_fcon_norm() const;
};

/// Integrates ceil(T/dt) steps and returns ceil(T/dt) + 1 samples.
/// Diagnostics for sample k describe the step leaving sample k; for the
/// final sample the step is evaluated but not applied. Failures are
/// rethrown as RolloutFailure carrying the step index.
Rollout rollout(const DmpModel& model, RolloutMode mode,
                const ConstraintSpec& spec, double dt, double T,
                const OptimizerConfig& cfg = {});

std::size_t rollout_samples(double dt, double T);

}  // namespace nhdmp
