#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nhdmp/dmp.hpp"
#include "nhdmp/trajectory.hpp"
#include "nhdmp/uk_constraint.hpp"

namespace nhdmp {

struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();  // m

  /// (this * other) as homogeneous transforms.
  RigidTransform compose(const RigidTransform& other) const {
    return {R * other.R, t + R * other.t};
  }
};

/// Blade frame relative to the tracking sensor: 5.2 cm along x and 1.3 cm
/// along z, no rotation.
RigidTransform sensor_to_blade();

/// Cutting demonstration on the XY plane: x = sin^2(pi t),
/// y = sin^3(pi t / 2), z = 0; orientation roll = 0, pitch = pi/4,
/// yaw = atan2(x, y). Where x and y both vanish the yaw takes its limit
/// from the right. Samples t = k dt for k = 0..round(T/dt).
PoseTrajectory gen_numerical_demo(double dt = 1e-3, double T = 1.0);

/// Right-composes every pose with x: R' = R x.R, p' = p + R x.t.
PoseTrajectory apply_rigid_transform(const PoseTrajectory& traj,
                                     const RigidTransform& x);

/// Padding used by lowpass_filter: min(size - 1, ceil(6 fs / fc)).
std::size_t default_padlen(std::size_t size, double cutoff_hz,
                           double sample_rate_hz);

/// Zero-phase 3rd-order Butterworth on each position axis and on the
/// successive rotation-vector increments log(R_{k+1} R_k^T), which are
/// integrated back from the first orientation.
PoseTrajectory lowpass_filter(const PoseTrajectory& traj, double cutoff_hz,
                              int order = 3);

/// Central differences in the interior, second-order one-sided stencils at
/// the ends. Needs >= 3 samples.
std::vector<Vec3> differentiate(std::span<const Vec3> x, double dt);

/// Angular velocity per sample from the increments log(R_{k+1} R_k^T) / dt,
/// averaged over the two neighbouring increments in the interior.
std::vector<Vec3> angular_velocity(const PoseTrajectory& traj);

struct PreprocessOptions {
  RigidTransform transform;  // sensor -> blade, identity for blade data
  double cutoff_hz = 4.8;    // <= 0 disables filtering
  int filter_order = 3;
  ConstraintSpec spec;
};

struct Preprocessed {
  PoseTrajectory trajectory;
  Vec3 initial_velocity = Vec3::Zero();   // projected onto the allowed plane
  double initial_violation = 0.0;         // c^T p_dot0 before projection
};

/// Blade transform, rebasing to the origin, filtering, differentiation and
/// initial-velocity projection.
Preprocessed preprocess(const PoseTrajectory& traj,
                        const PreprocessOptions& opt = {});

struct TrainingReport {
  Vec3 position_rmse = Vec3::Zero();     // forcing fit on training targets
  Vec3 orientation_rmse = Vec3::Zero();
};

/// Fits the six forcing terms with `rbf` bases each. The goal is the final
/// sample; the start pose and velocities come from the first sample
/// (initial_velocity overrides the differentiated one when given).
DmpModel train(const PoseTrajectory& traj, std::size_t rbf,
               const DmpGains& gains = {}, const Vec3* initial_velocity = nullptr,
               TrainingReport* report = nullptr);

}  // namespace nhdmp
