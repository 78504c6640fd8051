#pragma once

#include <cstddef>
#include <vector>

#include "nhdmp/so3.hpp"

namespace nhdmp {

struct PoseSample {
  double t = 0.0;
  Vec3 p = Vec3::Zero();
  Mat3 R = Mat3::Identity();
};

/// Uniformly sampled pose time series.
struct PoseTrajectory {
  double sample_rate = 0.0;  // Hz
  std::vector<PoseSample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  double dt() const noexcept { return 1.0 / sample_rate; }
  double duration() const noexcept {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }

  /// Throws std::invalid_argument unless there are >= 2 samples, the
  /// timestamps are uniform at sample_rate within 1e-9 s and every R is a
  /// rotation within `rot_tol`.
  void validate(double rot_tol = 1e-9) const;
};

/// Extrinsic xyz Euler angles: R = Rz(yaw) Ry(pitch) Rx(roll).
Mat3 euler_xyz_to_matrix(double roll, double pitch, double yaw);

/// Inverse of euler_xyz_to_matrix, returned as (roll, pitch, yaw) with
/// pitch in [-pi/2, pi/2].
Vec3 matrix_to_euler_xyz(const Mat3& R);

/// Difference a - b wrapped to (-pi, pi].
double wrap_angle(double a);

/// Per-axis position RMSE between two trajectories of equal length.
Vec3 position_rmse(const PoseTrajectory& a, const PoseTrajectory& b);

/// Per-axis RMSE of extrinsic xyz Euler angles, with wrapped differences.
Vec3 euler_rmse(const PoseTrajectory& a, const PoseTrajectory& b);

}  // namespace nhdmp
