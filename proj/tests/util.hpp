#pragma once

#include <cmath>
#include <random>

#include "attitude/sim.hpp"
#include "attitude/so3.hpp"

namespace testutil {

using att::Mat3;
using att::Vec3;
using att::Vec4;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long seed = 7) : eng(seed) {}

  double uni(double a = -1.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(eng); }
  Vec3 vec(double s = 1.0) { return Vec3(uni(-s, s), uni(-s, s), uni(-s, s)); }
  Mat3 mat(double s = 1.0) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = uni(-s, s);
    return m;
  }
  Mat3 sym(double s = 1.0) {
    const Mat3 m = mat(s);
    return 0.5 * (m + m.transpose());
  }
  Vec4 quat() {
    std::normal_distribution<double> n;
    Vec4 q(n(eng), n(eng), n(eng), n(eng));
    return q.normalized();
  }
  Vec3 unit() { return Vec3(quat().tail<3>()).normalized(); }
  Mat3 rot() { return att::quat_to_rot(quat()); }
};

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Noise-free two-vector frame seen from attitude r.
inline att::MeasurementFrame clean_frame(const Mat3& r, const Vec3& omega = Vec3::Zero(),
                                         bool third = true) {
  att::MeasurementFrame f;
  f.omega_m = omega;
  std::vector<Vec3> refs{Vec3(1, -1, 1), Vec3(0, 0, 1)};
  if (third) refs.push_back(refs[0].cross(refs[1]));
  for (const auto& v : refs) {
    f.v_inertial.push_back(v);
    f.v_body.push_back(r.transpose() * v);
    f.upsilon_inertial.push_back(v.normalized());
    f.upsilon_body.push_back((r.transpose() * v).normalized());
    f.weights.push_back(1.0);
  }
  return f;
}

}  // namespace testutil
