#include "nhdmp/trajectory.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nhdmp {

void PoseTrajectory::validate(double rot_tol) const {
  if (samples.size() < 2)
    throw std::invalid_argument("trajectory needs at least 2 samples");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw std::invalid_argument("trajectory sample rate must be positive");
  const double h = dt();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double expect = samples.front().t + static_cast<double>(k) * h;
    if (std::abs(samples[k].t - expect) > 1e-9)
      throw std::invalid_argument("non-uniform timestamp at sample " +
                                  std::to_string(k));
    if (!samples[k].p.allFinite())
      throw std::invalid_argument("non-finite position at sample " +
                                  std::to_string(k));
    if (!so3::is_rotation(samples[k].R, rot_tol))
      throw std::invalid_argument("invalid rotation at sample " +
                                  std::to_string(k));
  }
}

Mat3 euler_xyz_to_matrix(double roll, double pitch, double yaw) {
  return (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
          Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
          Eigen::AngleAxisd(roll, Vec3::UnitX()))
      .toRotationMatrix();
}

Vec3 matrix_to_euler_xyz(const Mat3& R) {
  const double pitch = std::asin(std::clamp(-R(2, 0), -1.0, 1.0));
  const double roll = std::atan2(R(2, 1), R(2, 2));
  const double yaw = std::atan2(R(1, 0), R(0, 0));
  return {roll, pitch, yaw};
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

Vec3 position_rmse(const PoseTrajectory& a, const PoseTrajectory& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("RMSE needs trajectories of equal length");
  Vec3 acc = Vec3::Zero();
  for (std::size_t k = 0; k < a.size(); ++k)
    acc += (a.samples[k].p - b.samples[k].p).cwiseAbs2();
  return (acc / static_cast<double>(a.size())).cwiseSqrt();
}

Vec3 euler_rmse(const PoseTrajectory& a, const PoseTrajectory& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("RMSE needs trajectories of equal length");
  Vec3 acc = Vec3::Zero();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Vec3 ea = matrix_to_euler_xyz(a.samples[k].R);
    const Vec3 eb = matrix_to_euler_xyz(b.samples[k].R);
    for (int i = 0; i < 3; ++i) {
      const double d = wrap_angle(ea(i) - eb(i));
      acc(i) += d * d;
    }
  }
  return (acc / static_cast<double>(a.size())).cwiseSqrt();
}

}  // namespace nhdmp
