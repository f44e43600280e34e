#include "attitude/so3.hpp"

#include <algorithm>
#include <cmath>

#include "attitude/errors.hpp"

namespace att {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vex(const Mat3& m, double tol) {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw Error(Errc::NotSkewSymmetric, "vex of a non-antisymmetric matrix");
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 proj_antisym(const Mat3& m) { return 0.5 * (m - m.transpose()); }
Mat3 proj_sym(const Mat3& m) { return 0.5 * (m + m.transpose()); }

double dist_identity(const Mat3& r) { return 0.25 * (3.0 - r.trace()); }

RotationMatrix exp_so3(const Vec3& v) {
  const double a = v.norm();
  const Mat3 k = skew(v);
  if (a < 1e-8) return Mat3::Identity() + k + 0.5 * k * k;
  return Mat3::Identity() + (std::sin(a) / a) * k + ((1.0 - std::cos(a)) / (a * a)) * k * k;
}

Vec4 quat_product(const Vec4& a, const Vec4& b) {
  const double a0 = a(0), b0 = b(0);
  const Vec3 av = a.tail<3>(), bv = b.tail<3>();
  Vec4 r;
  r(0) = a0 * b0 - av.dot(bv);
  r.tail<3>() = a0 * bv + b0 * av + av.cross(bv);
  return r;
}

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) {
  return quat_product(a, b).normalized();
}

UnitQuaternion quat_conj(const UnitQuaternion& q) {
  return UnitQuaternion(q(0), -q(1), -q(2), -q(3));
}

RotationMatrix quat_to_rot(const UnitQuaternion& q) {
  const Mat3 k = skew(q.tail<3>());
  return Mat3::Identity() + 2.0 * q(0) * k + 2.0 * k * k;
}

UnitQuaternion rot_to_quat(const RotationMatrix& r) {
  const double tr = r.trace();
  const double cand[4] = {tr, r(0, 0), r(1, 1), r(2, 2)};
  const int best = static_cast<int>(std::max_element(cand, cand + 4) - cand);
  UnitQuaternion q;
  if (best == 0) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
  } else if (best == 1) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s;
  } else if (best == 2) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  if (q(0) < 0.0) q = -q;
  return q.normalized();
}

RotationMatrix angle_axis_to_rot(const AngleAxis& a) {
  if (std::abs(a.u.norm() - 1.0) > 1e-9)
    throw Error(Errc::AxisNotUnit, "angle-axis axis must have unit norm");
  const Mat3 k = skew(a.u);
  return Mat3::Identity() + std::sin(a.alpha) * k + (1.0 - std::cos(a.alpha)) * k * k;
}

RotationMatrix rodrigues_to_rot(const RodriguesVector& rho) {
  const double n2 = rho.squaredNorm();
  return ((1.0 - n2) * Mat3::Identity() + 2.0 * rho * rho.transpose() + 2.0 * skew(rho)) /
         (1.0 + n2);
}

double rot_to_angle_error(const RotationMatrix& r) {
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  return std::acos(c);
}

Mat4 gamma_matrix(const Vec3& w) {
  Mat4 g;
  g << 0.0, -w.x(), -w.y(), -w.z(),
       w.x(), 0.0, w.z(), -w.y(),
       w.y(), -w.z(), 0.0, w.x(),
       w.z(), w.y(), -w.x(), 0.0;
  return g;
}

Mat43 xi_matrix(const UnitQuaternion& q) {
  Mat43 x;
  x.row(0) = -q.tail<3>().transpose();
  x.bottomRows<3>() = q(0) * Mat3::Identity() + skew(q.tail<3>());
  return x;
}

Mat4 gamma_exp(const Vec3& omega, double dt) {
  const double n = omega.norm();
  const double h = 0.5 * n * dt;
  // sin(h)/n -> dt/2 as n -> 0
  const double s = (h < 1e-8) ? 0.5 * dt * (1.0 - h * h / 6.0) : std::sin(h) / n;
  return std::cos(h) * Mat4::Identity() + s * gamma_matrix(omega);
}

bool in_unstable_set(const RotationMatrix& r, double tol) {
  return std::abs(r.trace() + 1.0) <= tol;
}

RotationMatrix orthonormalize(const Mat3& m) {
  Vec3 r0 = m.row(0).transpose();
  Vec3 r1 = m.row(1).transpose();
  r0.normalize();
  r1 = (r1 - r0.dot(r1) * r0).normalized();
  const Vec3 r2 = r0.cross(r1);
  Mat3 out;
  out.row(0) = r0.transpose();
  out.row(1) = r1.transpose();
  out.row(2) = r2.transpose();
  return out;
}

bool is_rotation(const Mat3& m, double tol) {
  if (!m.allFinite()) return false;
  if ((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(m.determinant() - 1.0) <= tol;
}

}  // namespace att
