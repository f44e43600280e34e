#include "attitude/nonlinear.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "attitude/errors.hpp"

namespace att {

namespace {

constexpr double kUnstableTol = 1e-9;
constexpr double kGainTol = 1e-6;

// Guards a denominator that must stay above kUnstableTol.
double guard_positive(double den, const char* what, StepEvents* events) {
  if (den > kUnstableTol) return den;
  if (!events) throw Error(Errc::UnstableSetProximity, what);
  ++events->unstable_set;
  return kUnstableTol;
}

double guard_gain(double e_plus_1, StepEvents* events) {
  if (std::abs(e_plus_1) >= kGainTol) return e_plus_1;
  if (!events) throw Error(Errc::GainSingularity, "E + 1 vanishes");
  ++events->gain_singularity;
  return e_plus_1 < 0.0 ? -kGainTol : kGainTol;
}

RotationMatrix propagate(const RotationMatrix& r_hat, const Vec3& rate, double dt) {
  return orthonormalize(r_hat * exp_so3(rate * dt));
}

struct SemiDirectError {
  Vec3 psi;
  double dist;
};

SemiDirectError semi_direct_error(const RotationMatrix& r_y, const RotationMatrix& r_hat) {
  const Mat3 rt = r_y.transpose() * r_hat;
  return {vex(proj_antisym(rt)), dist_identity(rt)};
}

const MeasurementFrame& frame_of(const FilterInput& in) {
  if (!in.frame) throw Error(Errc::DegenerateFrame, "direct filter needs a measurement frame");
  return *in.frame;
}

}  // namespace

VmAuxiliaries vm_auxiliaries(const MeasurementFrame& f, const RotationMatrix& r_hat) {
  VmAuxiliaries a;
  Mat3 mb = Mat3::Zero();
  Mat3 cross_sum = Mat3::Zero();
  for (std::size_t i = 0; i < f.upsilon_body.size(); ++i) {
    const double s = f.weights[i];
    const Vec3& v = f.upsilon_body[i];
    const Vec3 vh = r_hat.transpose() * f.upsilon_inertial[i];
    a.vex_pa += 0.5 * s * vh.cross(v);
    a.dist += 0.25 * s * (1.0 - vh.dot(v));
    mb += s * v * v.transpose();
    cross_sum += s * v * vh.transpose();
  }
  const Vec3 ev = Eigen::SelfAdjointEigenSolver<Mat3>(mb, Eigen::EigenvaluesOnly).eigenvalues();
  if (!(ev(0) > 0.0) || ev(2) / ev(0) > 1e12)
    throw Error(Errc::SingularMB, "M^B is singular; a third independent vector is needed");
  a.upsilon_big = (mb.inverse() * cross_sum).trace();
  Eigen::SelfAdjointEigenSolver<Mat3> es(mb.trace() * Mat3::Identity() - mb);
  a.lambda_min = es.eigenvalues()(0);
  return a;
}

Envelope ppf_envelope(double t, const PpfParams& p) {
  const double e = std::exp(-p.ell * t);
  return {(p.xi0 - p.xi_inf) * e + p.xi_inf, -p.ell * (p.xi0 - p.xi_inf) * e};
}

double ppf_envelope_rate_discrete(double t, double dt, const PpfParams& p) {
  const double prev = (t - dt < 0.0) ? p.xi0 : ppf_envelope(t - dt, p).xi;
  return (ppf_envelope(t, p).xi - prev) / dt;
}

Transformed ppf_transform(double dist, double xi, const PpfParams& p, PpfVariant v,
                          StepEvents* events) {
  const double hi = p.delta_hi * xi;
  const double lo = p.delta_lo * xi;
  if (dist >= hi || dist <= -lo) {
    if (!events) throw Error(Errc::FunnelViolation, "error left the prescribed envelope");
    ++events->funnel_violation;
    dist = dist >= hi ? 0.999 * hi : -0.999 * lo;
  }
  Transformed out;
  const double x = dist / xi;
  out.eps = 0.5 * std::log((p.delta_lo + x) / (p.delta_hi - x));
  if (v == PpfVariant::Deterministic) {
    out.mu = 0.5 / (lo + dist) + 0.5 / (hi - dist);
  } else {
    out.mu = (std::exp(2.0 * out.eps) + std::exp(-2.0 * out.eps) + 2.0) / (8.0 * xi * p.delta_hi);
  }
  return out;
}

NdafState cg_ndaf_step(const NdafState& s, const FilterInput& in, double dt, FilterMode mode,
                       const CgGains& g) {
  Vec3 w;
  if (mode == FilterMode::SemiDirect) {
    w = semi_direct_error(in.r_y, s.r_hat).psi;
  } else {
    w = vm_auxiliaries(frame_of(in), s.r_hat).vex_pa;
  }
  NdafState out;
  out.r_hat = propagate(s.r_hat, in.omega_m - s.b_hat - g.kw * w, dt);
  out.b_hat = s.b_hat + g.gamma * w * dt;
  return out;
}

NdafState ag_ndaf_step(const NdafState& s, const RotationMatrix& r_y, const Vec3& omega_m,
                       double dt, const CgGains& g, StepEvents* events) {
  const Mat3 rt = r_y.transpose() * s.r_hat;
  const double den = guard_positive(1.0 + rt.trace(), "Tr{R~} at -1", events);
  const Vec3 w = vex(proj_antisym(rt)) / den;
  NdafState out;
  out.r_hat = propagate(s.r_hat, omega_m - s.b_hat - g.kw * w, dt);
  out.b_hat = s.b_hat + g.gamma * w * dt;
  return out;
}

NdafState gp_ndaf_step(const NdafState& s, const FilterInput& in, double t, double dt,
                       const PpfParams& p, FilterMode mode, StepEvents* events) {
  const double xi = ppf_envelope(t, p).xi;
  const double xi_d = ppf_envelope_rate_discrete(t, dt, p);
  Vec3 w, vx;
  Transformed tr;
  if (mode == FilterMode::SemiDirect) {
    const auto e = semi_direct_error(in.r_y, s.r_hat);
    const double den = guard_positive(1.0 - e.dist, "||R~||_I at 1", events);
    tr = ppf_transform(e.dist, xi, p, PpfVariant::Deterministic, events);
    vx = e.psi;
    w = 2.0 * (p.kw * tr.mu * tr.eps - xi_d / (4.0 * xi)) / den * vx;
  } else {
    const auto a = vm_auxiliaries(frame_of(in), s.r_hat);
    const double den = guard_positive(1.0 + a.upsilon_big, "Upsilon at -1", events);
    tr = ppf_transform(a.dist, xi, p, PpfVariant::Deterministic, events);
    vx = a.vex_pa;
    w = (4.0 / a.lambda_min) * (p.kw * tr.mu * tr.eps - xi_d / xi) / den * vx;
  }
  NdafState out;
  out.r_hat = propagate(s.r_hat, in.omega_m - s.b_hat - w, dt);
  out.b_hat = s.b_hat + 0.5 * p.gamma * tr.mu * tr.eps * vx * dt;
  return out;
}

NsafState nsaf_step(const NsafState& s, const RotationMatrix& r_y, const Vec3& omega_m, double dt,
                    NsafVariant variant, const NsafGains& g, StepEvents* events) {
  const auto e = semi_direct_error(r_y, s.r_hat);
  const Vec3& psi = e.psi;
  const double d = e.dist;
  const double den = guard_positive(1.0 - d, "||R~||_I at 1", events);
  const Vec3 ones = Vec3::Ones();

  // D_psi = [psi, psi, psi]: D_psi * sigma = psi * sum(sigma), D_psi^T psi = |psi|^2 * 1
  const Vec3 w = (g.kw / g.eps) * (2.0 - d) / den * psi + g.k2 * psi * s.sigma_hat.sum();
  Vec3 rate = omega_m - s.b_hat - w;
  Vec3 sigma_drive = g.kw * psi.squaredNorm() * ones;
  if (variant == NsafVariant::Stratonovich) {
    const Vec3 diag_psi_sigma = psi.cwiseProduct(s.sigma_hat);
    rate -= 0.5 * diag_psi_sigma / den;
    sigma_drive += 0.5 * psi.cwiseProduct(psi) / den;
  }

  NsafState out;
  out.r_hat = propagate(s.r_hat, rate, dt);
  out.b_hat = s.b_hat + (g.gamma1 * d * psi - g.gamma1 * g.kb * s.b_hat) * dt;
  out.sigma_hat = s.sigma_hat + (g.gamma2 * d * sigma_drive - g.gamma2 * g.ksigma * s.sigma_hat) * dt;
  return out;
}

NsafState gp_nsaf_step(const NsafState& s, const FilterInput& in, double t, double dt,
                       const PpfParams& p, FilterMode mode, StepEvents* events,
                       bool sigma_eps_factor) {
  const double xi = ppf_envelope(t, p).xi;
  const double xi_d = ppf_envelope_rate_discrete(t, dt, p);

  NsafState out;
  if (mode == FilterMode::SemiDirect) {
    const auto e = semi_direct_error(in.r_y, s.r_hat);
    const Vec3& psi = e.psi;
    const double den = guard_positive(1.0 - e.dist, "||R~||_I at 1", events);
    const Transformed tr = ppf_transform(e.dist, xi, p, PpfVariant::Stochastic, events);
    const double ep1 = guard_gain(tr.eps + 1.0, events);
    const Vec3 w = 2.0 * (tr.eps + 2.0) / ep1 * tr.mu * psi.cwiseProduct(s.sigma_hat) +
                   2.0 * (p.kw * tr.mu * (tr.eps + 1.0) - xi_d / (4.0 * xi)) / den * psi;
    const double ee = std::exp(tr.eps);
    const double sigma_gain = (sigma_eps_factor ? tr.eps : 1.0) * (tr.eps + 2.0) * ee * tr.mu * tr.mu;
    out.r_hat = propagate(s.r_hat, in.omega_m - s.b_hat - w, dt);
    out.b_hat = s.b_hat + p.gamma1 * (tr.eps + 1.0) * ee * tr.mu * psi * dt;
    out.sigma_hat = s.sigma_hat + p.gamma2 * sigma_gain * psi.cwiseProduct(psi) * dt;
  } else {
    const auto a = vm_auxiliaries(frame_of(in), s.r_hat);
    const Vec3& psi = a.vex_pa;
    const double den = guard_positive(1.0 + a.upsilon_big, "Upsilon at -1", events);
    const Transformed tr = ppf_transform(a.dist, xi, p, PpfVariant::Stochastic, events);
    const double ep1 = guard_gain(tr.eps + 1.0, events);
    const Vec3 w = 2.0 * (tr.eps + 2.0) / ep1 * tr.mu * psi.cwiseProduct(s.sigma_hat) +
                   (4.0 / a.lambda_min) * (p.kw * tr.mu * tr.eps - xi_d / xi) / den * psi;
    const double ee = std::exp(tr.eps);
    out.r_hat = propagate(s.r_hat, in.omega_m - s.b_hat - w, dt);
    out.b_hat = s.b_hat + p.gamma1 * tr.mu * (tr.eps + 1.0) * ee * psi * dt;
    out.sigma_hat = s.sigma_hat +
                    p.gamma2 * (tr.eps + 2.0) * ee * tr.mu * tr.mu * psi.cwiseProduct(psi) * dt;
  }
  return out;
}

}  // namespace att
