#include "attitude/determination.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "attitude/errors.hpp"

namespace att {

namespace {

constexpr double kCollinearSin = 1e-6;

bool collinear(const Vec3& a, const Vec3& b) { return a.cross(b).norm() <= kCollinearSin; }

void require_two_independent(const MeasurementFrame& f) {
  const auto& vb = f.upsilon_body;
  const auto& vi = f.upsilon_inertial;
  for (std::size_t i = 0; i < vb.size(); ++i)
    for (std::size_t j = i + 1; j < vb.size(); ++j)
      if (!collinear(vb[i], vb[j]) && !collinear(vi[i], vi[j])) return;
  throw Error(Errc::CollinearObservations, "fewer than two non-collinear vector pairs");
}

Mat3 triad_basis(const Vec3& a, const Vec3& b) {
  const Vec3 t1 = a.normalized();
  const Vec3 t2 = t1.cross(b).normalized();
  const Vec3 t3 = t1.cross(t2).normalized();
  Mat3 m;
  m.col(0) = t1;
  m.col(1) = t2;
  m.col(2) = t3;
  return m;
}

Mat3 attitude_profile(const MeasurementFrame& f, const WahbaWeights& w) {
  Mat3 b = Mat3::Zero();
  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i)
    b += w.w[i] * f.upsilon_body[i] * f.upsilon_inertial[i].transpose();
  return b;
}

Mat3 adjugate(const Mat3& s) {
  Mat3 c;
  c(0, 0) = s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1);
  c(0, 1) = -(s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0));
  c(0, 2) = s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0);
  c(1, 0) = -(s(0, 1) * s(2, 2) - s(0, 2) * s(2, 1));
  c(1, 1) = s(0, 0) * s(2, 2) - s(0, 2) * s(2, 0);
  c(1, 2) = -(s(0, 0) * s(2, 1) - s(0, 1) * s(2, 0));
  c(2, 0) = s(0, 1) * s(1, 2) - s(0, 2) * s(1, 1);
  c(2, 1) = -(s(0, 0) * s(1, 2) - s(0, 2) * s(1, 0));
  c(2, 2) = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  return c.transpose();
}

}  // namespace

WahbaWeights make_weights(const std::vector<double>& s) {
  WahbaWeights w;
  w.s = s;
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (double si : s) w.w.push_back(si / total);
  return w;
}

DeterminationResult triad(const MeasurementFrame& f) {
  if (f.upsilon_body.size() < 2) throw Error(Errc::CollinearObservations, "TRIAD needs two pairs");
  const Vec3 &b1 = f.upsilon_body[0], &b2 = f.upsilon_body[1];
  const Vec3 &r1 = f.upsilon_inertial[0], &r2 = f.upsilon_inertial[1];
  if (collinear(b1.normalized(), b2.normalized()) || collinear(r1.normalized(), r2.normalized()))
    throw Error(Errc::CollinearObservations, "TRIAD anchor pair is collinear");
  const Mat3 ti = triad_basis(r1, r2);
  const Mat3 tb = triad_basis(b1, b2);
  DeterminationResult out;
  out.r_y = orthonormalize(ti * tb.transpose());
  out.q_y = rot_to_quat(out.r_y);
  return out;
}

DeterminationResult quest(const MeasurementFrame& f, const WahbaWeights& w) {
  require_two_independent(f);
  const Mat3 b = attitude_profile(f, w);
  const Mat3 s = b + b.transpose();
  const double trb = b.trace();
  const Vec3 z(b(1, 2) - b(2, 1), b(2, 0) - b(0, 2), b(0, 1) - b(1, 0));

  Mat4 m;
  m(0, 0) = trb;
  m.block<1, 3>(0, 1) = z.transpose();
  m.block<3, 1>(1, 0) = z;
  m.block<3, 3>(1, 1) = s - trb * Mat3::Identity();

  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  const double lambda = es.eigenvalues()(3);

  const double beta1 = lambda * lambda - trb * trb + adjugate(s).trace();
  const double beta2 = lambda - trb;
  const double x0 = ((lambda + trb) * Mat3::Identity() - s).determinant();
  const Vec3 x = (beta1 * Mat3::Identity() + beta2 * s + s * s) * z;

  UnitQuaternion q;
  const double n2 = x0 * x0 + x.squaredNorm();
  if (n2 < 1e-18) {
    q = es.eigenvectors().col(3);
  } else {
    q << x0, x;
    q /= std::sqrt(n2);
  }
  if (q(0) < 0.0) q = -q;

  DeterminationResult out;
  out.q_y = q;
  out.r_y = quat_to_rot(q);
  return out;
}

DeterminationResult quest(const MeasurementFrame& f) { return quest(f, make_weights(f.weights)); }

DeterminationResult svd_wahba(const MeasurementFrame& f, const WahbaWeights& w) {
  require_two_independent(f);
  const Mat3 b = attitude_profile(f, w);
  Eigen::JacobiSVD<Mat3> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  u.col(2) *= u.determinant();
  v.col(2) *= v.determinant();
  DeterminationResult out;
  out.r_y = v * u.transpose();
  out.q_y = rot_to_quat(out.r_y);
  return out;
}

DeterminationResult svd_wahba(const MeasurementFrame& f) {
  return svd_wahba(f, make_weights(f.weights));
}

DeterminationResult determine(DeterminationMethod m, const MeasurementFrame& f) {
  switch (m) {
    case DeterminationMethod::Triad: return triad(f);
    case DeterminationMethod::Quest: return quest(f);
    case DeterminationMethod::Svd: return svd_wahba(f);
  }
  return svd_wahba(f);
}

double wahba_cost(const RotationMatrix& r, const MeasurementFrame& f, const WahbaWeights& w) {
  double j = 0.0;
  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i)
    j += w.s[i] * (f.upsilon_body[i] - r.transpose() * f.upsilon_inertial[i]).squaredNorm();
  return 0.5 * j;
}

}  // namespace att
