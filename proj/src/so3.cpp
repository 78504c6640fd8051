#include "nhdmp/so3.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhdmp/errors.hpp"

namespace nhdmp::so3 {

Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Mat3 exp_map(const Vec3& w, double dt) {
  const Vec3 v = w * dt;
  const double th = v.norm();
  const double th2 = th * th;
  double a;  // sin(th)/th
  double b;  // (1 - cos(th))/th^2
  if (th < 1e-8) {
    a = 1.0 - th2 / 6.0;
    b = 0.5 - th2 / 24.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / th2;
  }
  const Mat3 K = hat(v);
  return Mat3::Identity() + a * K + b * K * K;
}

double angle(const Mat3& R) {
  const double s = vee(R).norm();  // sin(theta)
  const double c = 0.5 * (R.trace() - 1.0);
  return std::atan2(s, std::clamp(c, -1.0, 1.0));
}

Vec3 log_map(const Mat3& R) {
  const Vec3 axis_sin = vee(R);  // sin(theta) * n
  const double s = axis_sin.norm();
  const double c = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
  const double th = std::atan2(s, c);
  if (th > std::numbers::pi - kNearPiMargin) throw NearPiSingularity(th);
  if (s == 0.0) return Vec3::Zero();
  // theta / sin(theta) -> 1 as theta -> 0.
  const double k = th < 1e-8 ? 1.0 + th * th / 6.0 : th / s;
  return k * axis_sin;
}

Mat3 project(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3& V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) *= -1.0;
  return U * V.transpose();
}

double orthonormality_error(const Mat3& R) {
  return std::max((R * R.transpose() - Mat3::Identity()).norm(),
                  std::abs(R.determinant() - 1.0));
}

bool is_rotation(const Mat3& R, double tol) {
  return R.allFinite() && orthonormality_error(R) <= tol;
}

}  // namespace nhdmp::so3
