#include "nhdmp/uk_constraint.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhdmp {

ConstraintSpec::ConstraintSpec(const Vec3& body_axis) {
  if (!body_axis.allFinite() || std::abs(body_axis.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("constraint body axis must be a unit vector");
  axis_ = body_axis;
  // Complete to a right-handed frame (u, axis, v) = (x_b, y_b, z_b).
  const Vec3 seed = std::abs(axis_.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  u_ = (seed - seed.dot(axis_) * axis_).normalized();
  v_ = u_.cross(axis_);
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = smax * static_cast<double>(std::max(A.rows(), A.cols())) *
                        std::numeric_limits<double>::epsilon();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::VectorXd uk_force(const GeneralConstraint& gc,
                         const Eigen::VectorXd& f_unc) {
  if (gc.A.rows() < 1 || gc.A.cols() < 1)
    throw std::invalid_argument("constraint matrix must be non-empty");
  if (gc.A.cols() != f_unc.size() || gc.A.rows() != gc.b.size())
    throw std::invalid_argument("constraint dimensions are inconsistent");
  return pseudo_inverse(gc.A) * (gc.b - gc.A * f_unc);
}

BladeForce blade_constraint(const ConstraintSpec& spec, const Mat3& R,
                            const Vec3& w, const Vec3& p_dot,
                            const Vec3& p_ddot_unc) {
  BladeForce out;
  out.c = R * spec.body_axis();
  out.c_dot = w.cross(out.c);
  out.b = -out.c_dot.dot(p_dot);
  // c^+ = c / (c^T c) for a single non-zero row.
  out.f_con = out.c * ((out.b - out.c.dot(p_ddot_unc)) / out.c.squaredNorm());
  return out;
}

Vec3 project_initial_velocity(const ConstraintSpec& spec, const Mat3& R_wb,
                              const Vec3& p_dot0) {
  Eigen::Matrix<double, 3, 2> P;
  P.col(0) = R_wb * spec.plane_u();
  P.col(1) = R_wb * spec.plane_v();
  const Eigen::Matrix2d gram = P.transpose() * P;
  Vec3 out = P * gram.ldlt().solve(P.transpose() * p_dot0);
  // Remove the rounding residue along c so the result lies in the plane to
  // machine precision.
  const Vec3 c = R_wb * spec.body_axis();
  out -= c * (c.dot(out) / c.squaredNorm());
  return out;
}

double violation(const ConstraintSpec& spec, const Mat3& R, const Vec3& p_dot) {
  return (R * spec.body_axis()).dot(p_dot);
}

}  // namespace nhdmp
