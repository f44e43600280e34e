#include "attitude/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "attitude/errors.hpp"

namespace att {

namespace {

Mat4 checked_inverse(const Mat4& s) {
  Eigen::JacobiSVD<Mat4> svd(s);
  const auto& sv = svd.singularValues();
  if (!(sv(3) > 0.0) || sv(0) / sv(3) > 1e12)
    throw Error(Errc::SingularInnovation, "innovation covariance is singular");
  return s.inverse();
}

// R(Q)^T v through the sandwich Q^-1 (.) [0; v] (.) Q.
Vec3 body_from_inertial(const UnitQuaternion& q, const Vec3& v) {
  const Vec4 pure(0.0, v.x(), v.y(), v.z());
  return quat_product(quat_product(quat_conj(q), pure), q).tail<3>();
}

struct Residuals {
  Vec3 w = Vec3::Zero();
  Mat3 s = Mat3::Zero();
  Mat3 c = Mat3::Zero();
};

Residuals mekf_residuals(const UnitQuaternion& q, const MeasurementFrame& f,
                         const GaussianNoiseConfig& cfg) {
  Residuals r;
  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i) {
    const Vec3 vh = body_from_inertial(q, f.upsilon_inertial[i]);
    const Mat3 qinv = cfg.qv_for(i).inverse();
    const Vec3 e = qinv * (vh - f.upsilon_body[i]);
    const Mat3 k = skew(vh);
    r.w += vh.cross(e);
    // [v]x^T Qv^-1 [v]x, positive semidefinite
    r.s += k.transpose() * qinv * k;
    r.c += proj_sym(e * vh.transpose());
  }
  return r;
}

}  // namespace

Mat4 kf_measurement_matrix(const Vec3& ub, const Vec3& ui) {
  const Vec3 d = ub - ui;
  Mat4 h;
  h(0, 0) = 0.0;
  h.block<1, 3>(0, 1) = -d.transpose();
  h.block<3, 1>(1, 0) = d;
  h.block<3, 3>(1, 1) = -skew(ub + ui);
  return h;
}

KfState kf_step(const KfState& s, const MeasurementFrame& f, const GaussianNoiseConfig& cfg,
                double dt) {
  const Mat4 psi = gamma_exp(f.omega_m, dt);
  Vec4 q = psi * s.q_hat;
  const Mat43 xi = xi_matrix(s.q_hat);
  const Mat4 qq = (0.5 * dt) * (0.5 * dt) * xi * (cfg.kf_eta * Mat3::Identity()) * xi.transpose();
  Mat4 p = psi * s.p * psi.transpose() + qq;

  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i) {
    const Mat4 h = kf_measurement_matrix(f.upsilon_body[i], f.upsilon_inertial[i]);
    const Mat43 xq = xi_matrix(q);
    const Mat4 rq = 0.25 * xq * (cfg.kf_epsilon * Mat3::Identity()) * xq.transpose() +
                    cfg.kf_alpha * Mat4::Identity();
    const Mat4 sm = h * p * h.transpose() + rq;
    const Mat4 k = p * h.transpose() * checked_inverse(sm);
    const Mat4 ikh = Mat4::Identity() - k * h;
    q = ikh * q;
    p = ikh * p * ikh.transpose() + k * rq * k.transpose();
    p = 0.5 * (p + p.transpose());
  }

  KfState out;
  out.q_hat = q.normalized();
  out.p = p;
  return out;
}

KfBiasState kf_bias_step(const KfBiasState& s, const MeasurementFrame& f,
                         const GaussianNoiseConfig& cfg, double dt) {
  const UnitQuaternion qh = s.q_hat();
  const Vec3 omega_hat = f.omega_m - s.b_hat();
  const Mat4 psi = gamma_exp(omega_hat, dt);

  Vec7 x;
  x.head<4>() = psi * qh;
  x.tail<3>() = s.b_hat();

  Mat7 phi = Mat7::Zero();
  phi.block<4, 4>(0, 0) = psi;
  phi.block<4, 3>(0, 4) = -0.5 * dt * xi_matrix(qh);
  phi.block<3, 3>(4, 4) = Mat3::Identity();

  const double s1 = cfg.kf_sigma123(0), s2 = cfg.kf_sigma123(1), s3 = cfg.kf_sigma123(2);
  const Mat4 m_hat = qh * qh.transpose() + s.p.block<4, 4>(0, 0);
  Mat7 pw = Mat7::Zero();
  pw.block<4, 4>(0, 0) = (s1 * s1 + s2 * s2 * dt) * (m_hat.trace() * Mat4::Identity() - m_hat);
  pw.block<3, 3>(4, 4) = s3 * s3 * dt * Mat3::Identity();

  Mat7 p = phi * s.p * phi.transpose() + pw;

  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i) {
    const Mat4 h = kf_measurement_matrix(f.upsilon_body[i], f.upsilon_inertial[i]);
    Eigen::Matrix<double, 4, 7> hb = Eigen::Matrix<double, 4, 7>::Zero();
    hb.block<4, 4>(0, 0) = h;
    const Vec4 qm = x.head<4>();
    const Mat4 pq = p.block<4, 4>(0, 0);
    const Mat4 mm = qm * qm.transpose() + pq;
    const Mat4 g = gamma_matrix(f.upsilon_body[i]);
    const Mat4 pv =
        0.25 * cfg.kf_rho * (mm.trace() * Mat4::Identity() - mm - g * mm * g.transpose());
    const Mat4 sm = h * pq * h.transpose() + pv;
    const Eigen::Matrix<double, 7, 4> k = p * hb.transpose() * checked_inverse(sm);
    const Mat7 ikh = Mat7::Identity() - k * hb;
    x = ikh * x;
    p = ikh * p * ikh.transpose() + k * pv * k.transpose();
    p = 0.5 * (p + p.transpose());
  }

  KfBiasState out;
  out.x_hat = x;
  out.x_hat.head<4>().normalize();
  out.p = p;
  return out;
}

MekfState mekf_step(const MekfState& s, const MeasurementFrame& f, const GaussianNoiseConfig& cfg,
                    double dt) {
  const Residuals r = mekf_residuals(s.q_hat, f, cfg);
  const Vec3 w_rate = f.omega_m - s.b_hat;

  MekfState out;
  out.q_hat = (gamma_exp(w_rate + s.pa * r.w, dt) * s.q_hat).normalized();
  out.b_hat = s.b_hat + s.pc.transpose() * r.w * dt;

  const int n = std::max(1, cfg.riccati_substeps);
  const double h = dt / n;
  const Mat3 wx = skew(w_rate);
  Mat3 pa = s.pa, pb = s.pb, pc = s.pc;
  for (int j = 0; j < n; ++j) {
    const Mat3 na = pa + (cfg.qw + 2.0 * proj_sym(pa * wx - pc) - pa * r.s * pa) * h;
    const Mat3 nb = pb + (cfg.qb - pc.transpose() * r.s * pc) * h;
    const Mat3 nc = pc - (wx * pc + pa * r.s * pc + pb) * h;
    pa = proj_sym(na);
    pb = proj_sym(nb);
    pc = nc;
  }
  out.pa = pa;
  out.pb = pb;
  out.pc = pc;
  return out;
}

GamefState gamef_step(const GamefState& s, const MeasurementFrame& f,
                      const GaussianNoiseConfig& cfg, double dt) {
  const Residuals r = mekf_residuals(s.q_hat, f, cfg);
  const Vec3 w_rate = f.omega_m - s.b_hat;
  const Mat3 e = r.c.trace() * Mat3::Identity() - r.c;
  Mat3 es = e - r.s;
  if (cfg.gamef_clip_curvature) {
    Eigen::SelfAdjointEigenSolver<Mat3> eig(proj_sym(r.s - e));
    const Vec3 lam = eig.eigenvalues().cwiseMax(0.0);
    es = -(eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose());
  }

  GamefState out;
  out.q_hat = (gamma_exp(w_rate + s.pa * r.w, dt) * s.q_hat).normalized();
  out.b_hat = s.b_hat + s.pc.transpose() * r.w * dt;

  const int n = std::max(1, cfg.riccati_substeps);
  const double h = dt / n;
  Mat3 pa = s.pa, pb = s.pb, pc = s.pc;
  for (int j = 0; j < n; ++j) {
    const Mat3 wx = skew(w_rate - 0.5 * pa * r.w);
    const Mat3 na = pa + (2.0 * proj_sym(pa * wx - pc) + pa * es * pa + cfg.qw) * h;
    const Mat3 nb = pb + (cfg.qb + pc.transpose() * es * pc) * h;
    const Mat3 nc = pc - (wx * pc - pa * es * pc + pb) * h;
    pa = proj_sym(na);
    pb = proj_sym(nb);
    pc = nc;
  }
  out.pa = pa;
  out.pb = pb;
  out.pc = pc;
  return out;
}

}  // namespace att
