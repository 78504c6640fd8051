#pragma once

#include <Eigen/Core>

#include "nhdmp/so3.hpp"

namespace nhdmp {

/// Forbidden body-frame direction of motion; the world-frame constraint
/// vector is c = R * body_axis and the constraint reads c^T p_dot = 0.
class ConstraintSpec {
 public:
  /// Lateral blade axis y_b.
  ConstraintSpec() = default;
  explicit ConstraintSpec(const Vec3& body_axis);

  const Vec3& body_axis() const noexcept { return axis_; }

  /// Two unit body axes spanning the allowed plane, (x_b, z_b) for the
  /// default spec.
  const Vec3& plane_u() const noexcept { return u_; }
  const Vec3& plane_v() const noexcept { return v_; }

  Vec3 world_axis(const Mat3& R) const { return R * axis_; }

 private:
  Vec3 axis_ = Vec3::UnitY();
  Vec3 u_ = Vec3::UnitX();
  Vec3 v_ = Vec3::UnitZ();
};

/// A(sigma, sigma_dot) sigma_ddot = b with identity mass matrix.
struct GeneralConstraint {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

/// Moore-Penrose pseudoinverse by SVD; singular values below
/// sigma_max * max(m, n) * eps are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A);

/// Udwadia-Kalaba constraint force f_con = A^+ (b - A f_unc).
Eigen::VectorXd uk_force(const GeneralConstraint& gc,
                         const Eigen::VectorXd& f_unc);

struct BladeForce {
  Vec3 c;      // constraint vector R * body_axis
  Vec3 c_dot;  // hat(w) * c
  double b;    // -c_dot^T p_dot
  Vec3 f_con;
};

/// Single-constraint specialization with A = c^T and b = -c_dot^T p_dot.
BladeForce blade_constraint(const ConstraintSpec& spec, const Mat3& R,
                            const Vec3& w, const Vec3& p_dot,
                            const Vec3& p_ddot_unc);

inline Vec3 blade_constraint_force(const ConstraintSpec& spec, const Mat3& R,
                                   const Vec3& w, const Vec3& p_dot,
                                   const Vec3& p_ddot_unc) {
  return blade_constraint(spec, R, w, p_dot, p_ddot_unc).f_con;
}

/// Orthogonal projection of p_dot0 onto span{R x_b, R z_b}, computed as
/// P (P^T P)^-1 P^T p_dot0.
Vec3 project_initial_velocity(const ConstraintSpec& spec, const Mat3& R_wb,
                              const Vec3& p_dot0);

/// Signed lateral speed c^T p_dot.
double violation(const ConstraintSpec& spec, const Mat3& R, const Vec3& p_dot);

}  // namespace nhdmp
