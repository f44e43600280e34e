#pragma once

// Rotation algebra on SO(3) and the unit-quaternion sphere.
//
// Conventions: R maps body-frame coordinates to inertial coordinates,
// body measurements are v_B = R^T v_I, and the kinematics are dR/dt = R [w]x.
// Quaternions are scalar-first [q0, q1, q2, q3] with Hamilton products.

#include <Eigen/Dense>

namespace att {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat43 = Eigen::Matrix<double, 4, 3>;

using RotationMatrix = Mat3;
using UnitQuaternion = Vec4;
using RodriguesVector = Vec3;

struct AngleAxis {
  double alpha = 0.0;  // rad
  Vec3 u = Vec3::UnitX();
};

Mat3 skew(const Vec3& v);

// Throws NotSkewSymmetric when |m + m^T|_inf > tol.
Vec3 vex(const Mat3& m, double tol = 1e-6);

Mat3 proj_antisym(const Mat3& m);
Mat3 proj_sym(const Mat3& m);

// (1/4) Tr{I - R}, in [0, 1] for rotations.
double dist_identity(const Mat3& r);

// exp([v]x); second-order series below |v| = 1e-8.
RotationMatrix exp_so3(const Vec3& v);

// Raw Hamilton product, no renormalization. Needed for pure quaternions.
Vec4 quat_product(const Vec4& a, const Vec4& b);
UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b);
UnitQuaternion quat_conj(const UnitQuaternion& q);
RotationMatrix quat_to_rot(const UnitQuaternion& q);
// Shepperd's method, q0 >= 0.
UnitQuaternion rot_to_quat(const RotationMatrix& r);

// I + sin(a)[u]x + (1 - cos a)[u]x^2. Throws AxisNotUnit.
RotationMatrix angle_axis_to_rot(const AngleAxis& a);
RotationMatrix rodrigues_to_rot(const RodriguesVector& rho);

// arccos((Tr{R} - 1)/2) with the argument clamped to [-1, 1].
double rot_to_angle_error(const RotationMatrix& r);

Mat4 gamma_matrix(const Vec3& omega);
Mat43 xi_matrix(const UnitQuaternion& q);
// exp(0.5 * Gamma(omega) * dt), closed form since Gamma^2 = -|omega|^2 I.
Mat4 gamma_exp(const Vec3& omega, double dt);

bool in_unstable_set(const RotationMatrix& r, double tol);

// Gram-Schmidt on the rows, then a determinant sign fix.
RotationMatrix orthonormalize(const Mat3& m);
bool is_rotation(const Mat3& m, double tol = 1e-9);

}  // namespace att
