#pragma once

// Discrete Gaussian attitude filters: basic quaternion KF, bias-compensating
// KF, MEKF and GAMEF. Each step is a pure function of (state, frame).

#include <algorithm>
#include <vector>

#include "attitude/sim.hpp"
#include "attitude/so3.hpp"

namespace att {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

struct GaussianNoiseConfig {
  // Per-vector covariance of the normalized measurement; the last entry is
  // reused when the frame carries more vectors than entries.
  std::vector<Mat3> qv{Mat3::Identity()};
  Mat3 qw = Mat3::Identity();
  Mat3 qb = Mat3::Identity();
  double kf_alpha = 1e-6;
  Vec3 kf_sigma123 = Vec3(0.2, 0.0, 0.01);
  double kf_eta = 0.04;
  double kf_epsilon = 0.02;
  double kf_rho = 1.0;
  // Euler sub-steps for the MEKF/GAMEF covariance blocks within one dt.
  int riccati_substeps = 1;
  // GAMEF: clip the curvature S - E to be positive semidefinite before it
  // enters the Riccati blocks. Far from the optimum S - E is indefinite and
  // the unclipped equations have a finite escape time.
  bool gamef_clip_curvature = true;

  const Mat3& qv_for(std::size_t i) const { return qv[std::min(i, qv.size() - 1)]; }
};

struct KfState {
  UnitQuaternion q_hat = UnitQuaternion(1, 0, 0, 0);
  Mat4 p = Mat4::Identity();
};

struct KfBiasState {
  Vec7 x_hat = (Vec7() << 1, 0, 0, 0, 0, 0, 0).finished();
  Mat7 p = Mat7::Identity();

  UnitQuaternion q_hat() const { return x_hat.head<4>(); }
  Vec3 b_hat() const { return x_hat.tail<3>(); }
};

struct MekfState {
  UnitQuaternion q_hat = UnitQuaternion(1, 0, 0, 0);
  Vec3 b_hat = Vec3::Zero();
  Mat3 pa = Mat3::Identity();
  Mat3 pb = Mat3::Identity();
  Mat3 pc = Mat3::Zero();
};

struct GamefState : MekfState {};

// Pseudo-measurement matrix H with H Q = 0 when upsilon_b = R(Q)^T upsilon_i.
Mat4 kf_measurement_matrix(const Vec3& upsilon_b, const Vec3& upsilon_i);

// Prediction with frame.omega_m, then one sequential correction per vector
// pair. Throws SingularInnovation.
KfState kf_step(const KfState& s, const MeasurementFrame& frame, const GaussianNoiseConfig& cfg,
                double dt);
KfBiasState kf_bias_step(const KfBiasState& s, const MeasurementFrame& frame,
                         const GaussianNoiseConfig& cfg, double dt);
MekfState mekf_step(const MekfState& s, const MeasurementFrame& frame,
                    const GaussianNoiseConfig& cfg, double dt);
GamefState gamef_step(const GamefState& s, const MeasurementFrame& frame,
                      const GaussianNoiseConfig& cfg, double dt);

}  // namespace att
