#pragma once

#include <Eigen/Core>

namespace nhdmp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

namespace so3 {

/// Cross-product matrix: hat(w) * v == w.cross(v).
Mat3 hat(const Vec3& w);

/// Inverse of hat() on the antisymmetric part of m.
Vec3 vee(const Mat3& m);

/// Rodrigues exponential exp([w] dt). Falls back to a Taylor expansion of
/// the coefficients when |w| dt < 1e-8.
Mat3 exp_map(const Vec3& w, double dt = 1.0);

/// Rotation vector theta * n with exp_map(log_map(R)) == R.
/// Throws NearPiSingularity when theta > pi - kNearPiMargin.
Vec3 log_map(const Mat3& R);

inline constexpr double kNearPiMargin = 1e-6;

/// Rotation angle in [0, pi].
double angle(const Mat3& R);

/// Closest rotation in Frobenius norm (polar factor via SVD).
Mat3 project(const Mat3& m);

/// max(|R R^T - I|_F, |det R - 1|).
double orthonormality_error(const Mat3& R);

bool is_rotation(const Mat3& R, double tol = 1e-9);

}  // namespace so3
}  // namespace nhdmp
