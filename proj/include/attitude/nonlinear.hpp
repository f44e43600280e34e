#pragma once

// Nonlinear attitude filters on SO(3): constant-gain (CG), adaptive-gain (AG)
// and guaranteed-performance (GP) deterministic filters, and the adaptive
// and GP stochastic filters. All steps are exact-exponential in R_hat and
// forward Euler in b_hat and sigma_hat.
//
// Error conditions (FunnelViolation, UnstableSetProximity, GainSingularity)
// throw when `events` is null. With an events sink they are counted and the
// offending quantity is clamped so the run can continue.

#include "attitude/sim.hpp"
#include "attitude/so3.hpp"

namespace att {

struct NdafState {
  RotationMatrix r_hat = Mat3::Identity();
  Vec3 b_hat = Vec3::Zero();
};

struct NsafState {
  RotationMatrix r_hat = Mat3::Identity();
  Vec3 b_hat = Vec3::Zero();
  Vec3 sigma_hat = Vec3::Zero();
};

struct PpfParams {
  double xi0 = 1.7;
  double xi_inf = 0.08;
  double ell = 4.0;
  double delta_hi = 1.7;
  double delta_lo = 1.7;
  double kw = 2.0;
  double gamma = 1.0;   // deterministic bias gain
  double gamma1 = 1.0;  // stochastic bias gain
  double gamma2 = 0.1;  // stochastic sigma gain
};

struct CgGains {
  double kw = 1.0;
  double gamma = 1.0;
};

struct NsafGains {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double kb = 0.01;
  double ksigma = 0.01;
  double kw = 2.0;
  double k2 = 0.5;
  double eps = 0.1;
};

struct VmAuxiliaries {
  Vec3 vex_pa = Vec3::Zero();   // vex(Pa(M^B R~))
  double dist = 0.0;            // ||M^B R~||_I
  double upsilon_big = 0.0;     // Tr{(M^B)^-1 sum s v v_hat^T}
  double lambda_min = 0.0;      // min eig of Tr{M^B} I - M^B
};

struct StepEvents {
  long funnel_violation = 0;
  long unstable_set = 0;
  long gain_singularity = 0;

  StepEvents& operator+=(const StepEvents& o) {
    funnel_violation += o.funnel_violation;
    unstable_set += o.unstable_set;
    gain_singularity += o.gain_singularity;
    return *this;
  }
};

enum class FilterMode { SemiDirect, Direct };
enum class PpfVariant { Deterministic, Stochastic };
enum class NsafVariant { Ito, Stratonovich };

// What a filter sees at one sample. Semi-direct filters read r_y, direct
// filters read frame.
struct FilterInput {
  Vec3 omega_m = Vec3::Zero();
  RotationMatrix r_y = Mat3::Identity();
  const MeasurementFrame* frame = nullptr;
};

// Throws SingularMB when M^B is near singular (condition > 1e12).
VmAuxiliaries vm_auxiliaries(const MeasurementFrame& frame, const RotationMatrix& r_hat);

struct Envelope {
  double xi = 0.0;
  double xi_dot = 0.0;
};
Envelope ppf_envelope(double t, const PpfParams& p);
// Backward difference (xi(t) - xi(t - dt))/dt, with xi(-dt) taken as xi0.
double ppf_envelope_rate_discrete(double t, double dt, const PpfParams& p);

struct Transformed {
  double eps = 0.0;
  double mu = 0.0;
};
Transformed ppf_transform(double dist, double xi, const PpfParams& p, PpfVariant v,
                          StepEvents* events = nullptr);

NdafState cg_ndaf_step(const NdafState& s, const FilterInput& in, double dt, FilterMode mode,
                       const CgGains& g);
NdafState ag_ndaf_step(const NdafState& s, const RotationMatrix& r_y, const Vec3& omega_m,
                       double dt, const CgGains& g, StepEvents* events = nullptr);
NdafState gp_ndaf_step(const NdafState& s, const FilterInput& in, double t, double dt,
                       const PpfParams& p, FilterMode mode, StepEvents* events = nullptr);
NsafState nsaf_step(const NsafState& s, const RotationMatrix& r_y, const Vec3& omega_m, double dt,
                    NsafVariant variant, const NsafGains& g, StepEvents* events = nullptr);
// sigma_eps_factor selects the discrete semi-direct sigma update, which
// carries an extra E factor relative to the continuous law.
NsafState gp_nsaf_step(const NsafState& s, const FilterInput& in, double t, double dt,
                       const PpfParams& p, FilterMode mode, StepEvents* events = nullptr,
                       bool sigma_eps_factor = true);

}  // namespace att
