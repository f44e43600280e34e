#include "attitude/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "attitude/errors.hpp"

namespace att {

namespace {

struct AlgInfo {
  AlgorithmId id;
  const char* name;
  const char* description;
};

const AlgInfo kAlgs[] = {
    {AlgorithmId::Triad, "triad", "TRIAD determination (first two pairs)"},
    {AlgorithmId::Quest, "quest", "QUEST determination"},
    {AlgorithmId::Svd, "svd", "SVD solution of Wahba's problem"},
    {AlgorithmId::Kf, "kf", "basic quaternion Kalman filter"},
    {AlgorithmId::KfBias, "kf_bias", "bias-compensating quaternion Kalman filter"},
    {AlgorithmId::Mekf, "mekf", "multiplicative extended Kalman filter"},
    {AlgorithmId::Gamef, "gamef", "geometric approximate minimum-energy filter"},
    {AlgorithmId::CgNdafSd, "cg_ndaf_sd", "constant-gain semi-direct deterministic filter"},
    {AlgorithmId::CgNdafD, "cg_ndaf_d", "constant-gain direct deterministic filter"},
    {AlgorithmId::AgNdaf, "ag_ndaf", "adaptive-gain semi-direct deterministic filter"},
    {AlgorithmId::GpNdafSd, "gp_ndaf_sd", "guaranteed-performance semi-direct deterministic filter"},
    {AlgorithmId::GpNdafD, "gp_ndaf_d", "guaranteed-performance direct deterministic filter"},
    {AlgorithmId::AgiNsaf, "agi_nsaf", "adaptive-gain Ito stochastic filter"},
    {AlgorithmId::AgsNsaf, "ags_nsaf", "adaptive-gain Stratonovich stochastic filter"},
    {AlgorithmId::GpNsafSd, "gp_nsaf_sd", "guaranteed-performance semi-direct stochastic filter"},
    {AlgorithmId::GpNsafD, "gp_nsaf_d", "guaranteed-performance direct stochastic filter"},
};

const AlgInfo& info(AlgorithmId id) {
  for (const auto& a : kAlgs)
    if (a.id == id) return a;
  return kAlgs[0];
}

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Uniform view over the different filter states.
struct Estimator {
  AlgorithmId id = AlgorithmId::Svd;
  const AlgorithmParams* p = nullptr;
  RotationMatrix r_hat = Mat3::Identity();
  KfState kf;
  KfBiasState kfb;
  MekfState mekf;
  GamefState gamef;
  NdafState ndaf;
  NsafState nsaf;

  void init(const RotationMatrix& r0) {
    const UnitQuaternion q0 = rot_to_quat(r0);
    r_hat = r0;
    kf.q_hat = q0;
    kf.p = p->kf_p0 * Mat4::Identity();
    kfb.x_hat.head<4>() = q0;
    kfb.x_hat.tail<3>().setZero();
    kfb.p = p->kf_p0 * Mat7::Identity();
    mekf.q_hat = q0;
    mekf.b_hat.setZero();
    mekf.pa = p->pa0 * Mat3::Identity();
    mekf.pb = p->pb0 * Mat3::Identity();
    mekf.pc.setZero();
    static_cast<MekfState&>(gamef) = mekf;
    ndaf.r_hat = r0;
    ndaf.b_hat.setZero();
    nsaf.r_hat = r0;
    nsaf.b_hat.setZero();
    nsaf.sigma_hat.setZero();
  }

  RotationMatrix estimate() const {
    switch (id) {
      case AlgorithmId::Triad:
      case AlgorithmId::Quest:
      case AlgorithmId::Svd: return r_hat;
      case AlgorithmId::Kf: return quat_to_rot(kf.q_hat);
      case AlgorithmId::KfBias: return quat_to_rot(kfb.q_hat());
      case AlgorithmId::Mekf: return quat_to_rot(mekf.q_hat);
      case AlgorithmId::Gamef: return quat_to_rot(gamef.q_hat);
      case AlgorithmId::CgNdafSd:
      case AlgorithmId::CgNdafD:
      case AlgorithmId::AgNdaf:
      case AlgorithmId::GpNdafSd:
      case AlgorithmId::GpNdafD: return ndaf.r_hat;
      default: return nsaf.r_hat;
    }
  }

  Vec3 bias() const {
    switch (id) {
      case AlgorithmId::Triad:
      case AlgorithmId::Quest:
      case AlgorithmId::Svd:
      case AlgorithmId::Kf: return Vec3::Zero();
      case AlgorithmId::KfBias: return kfb.b_hat();
      case AlgorithmId::Mekf: return mekf.b_hat;
      case AlgorithmId::Gamef: return gamef.b_hat;
      case AlgorithmId::CgNdafSd:
      case AlgorithmId::CgNdafD:
      case AlgorithmId::AgNdaf:
      case AlgorithmId::GpNdafSd:
      case AlgorithmId::GpNdafD: return ndaf.b_hat;
      default: return nsaf.b_hat;
    }
  }

  Vec3 sigma() const {
    switch (id) {
      case AlgorithmId::AgiNsaf:
      case AlgorithmId::AgsNsaf:
      case AlgorithmId::GpNsafSd:
      case AlgorithmId::GpNsafD: return nsaf.sigma_hat;
      default: return Vec3::Zero();
    }
  }

  // One recursion of length dt. `next` is frame k + 1, used by the
  // determination algorithms and by the KF correction.
  void advance(const MeasurementFrame& f, const MeasurementFrame& next, double t, double dt,
               StepEvents& ev) {
    FilterInput in;
    in.omega_m = f.omega_m;
    in.frame = &f;
    const bool semi = id == AlgorithmId::CgNdafSd || id == AlgorithmId::AgNdaf ||
                      id == AlgorithmId::GpNdafSd || id == AlgorithmId::AgiNsaf ||
                      id == AlgorithmId::AgsNsaf || id == AlgorithmId::GpNsafSd;
    if (semi) in.r_y = determine(p->ry_backend, f).r_y;

    switch (id) {
      case AlgorithmId::Triad: r_hat = triad(next).r_y; break;
      case AlgorithmId::Quest: r_hat = quest(next).r_y; break;
      case AlgorithmId::Svd: r_hat = svd_wahba(next).r_y; break;
      case AlgorithmId::Kf:
      case AlgorithmId::KfBias: {
        // Propagate with the gyro sample at k, correct with the vectors at k + 1.
        MeasurementFrame g = next;
        g.omega_m = f.omega_m;
        if (id == AlgorithmId::Kf)
          kf = kf_step(kf, g, p->gauss, dt);
        else
          kfb = kf_bias_step(kfb, g, p->gauss, dt);
        break;
      }
      case AlgorithmId::Mekf: mekf = mekf_step(mekf, f, p->gauss, dt); break;
      case AlgorithmId::Gamef: gamef = gamef_step(gamef, f, p->gauss, dt); break;
      case AlgorithmId::CgNdafSd: ndaf = cg_ndaf_step(ndaf, in, dt, FilterMode::SemiDirect, p->cg); break;
      case AlgorithmId::CgNdafD: ndaf = cg_ndaf_step(ndaf, in, dt, FilterMode::Direct, p->cg); break;
      case AlgorithmId::AgNdaf: ndaf = ag_ndaf_step(ndaf, in.r_y, in.omega_m, dt, p->cg, &ev); break;
      case AlgorithmId::GpNdafSd:
        ndaf = gp_ndaf_step(ndaf, in, t, dt, p->ppf, FilterMode::SemiDirect, &ev);
        break;
      case AlgorithmId::GpNdafD:
        ndaf = gp_ndaf_step(ndaf, in, t, dt, p->ppf, FilterMode::Direct, &ev);
        break;
      case AlgorithmId::AgiNsaf:
        nsaf = nsaf_step(nsaf, in.r_y, in.omega_m, dt, NsafVariant::Ito, p->nsaf, &ev);
        break;
      case AlgorithmId::AgsNsaf:
        nsaf = nsaf_step(nsaf, in.r_y, in.omega_m, dt, NsafVariant::Stratonovich, p->nsaf, &ev);
        break;
      case AlgorithmId::GpNsafSd:
        nsaf = gp_nsaf_step(nsaf, in, t, dt, p->ppf, FilterMode::SemiDirect, &ev, p->sigma_eps_factor);
        break;
      case AlgorithmId::GpNsafD:
        nsaf = gp_nsaf_step(nsaf, in, t, dt, p->ppf, FilterMode::Direct, &ev, p->sigma_eps_factor);
        break;
    }
  }

  bool substeppable() const {
    return !is_determination(id) && id != AlgorithmId::Kf && id != AlgorithmId::KfBias;
  }

  // Advances from sample k to k + 1. With max_correction_step > 0 the
  // interval is split so that no sub-step rotates the estimate more than
  // that angle beyond the gyro prediction; the frame is held over the
  // interval.
  void step(const MeasurementFrame& f, const MeasurementFrame& next, double t, double dt,
            StepEvents& ev) {
    const double cap = p->max_correction_step;
    if (cap <= 0.0 || !substeppable()) {
      advance(f, next, t, dt, ev);
      return;
    }
    constexpr double min_h = 1e-7;
    double done = 0.0;
    double h = dt;
    while (dt - done > 1e-12) {
      h = std::min(h, dt - done);
      Estimator trial = *this;
      StepEvents tev;
      trial.advance(f, next, t + done, h, tev);
      const RotationMatrix pred = estimate() * exp_so3((f.omega_m - bias()) * h);
      const double angle = rot_to_angle_error(pred.transpose() * trial.estimate());
      if (angle > cap && h > min_h) {
        h = std::max(0.5 * h, min_h);
        continue;
      }
      *this = trial;
      ev += tev;
      done += h;
      if (angle < 0.25 * cap) h *= 2.0;
    }
  }
};

}  // namespace

const std::vector<AlgorithmId>& all_algorithms() {
  static const std::vector<AlgorithmId> ids = [] {
    std::vector<AlgorithmId> v;
    for (const auto& a : kAlgs) v.push_back(a.id);
    return v;
  }();
  return ids;
}

std::string algorithm_name(AlgorithmId id) { return info(id).name; }
const char* algorithm_description(AlgorithmId id) { return info(id).description; }

std::optional<AlgorithmId> parse_algorithm(const std::string& name) {
  for (const auto& a : kAlgs)
    if (name == a.name) return a.id;
  return std::nullopt;
}

bool is_gp(AlgorithmId id) {
  return id == AlgorithmId::GpNdafSd || id == AlgorithmId::GpNdafD ||
         id == AlgorithmId::GpNsafSd || id == AlgorithmId::GpNsafD;
}

bool is_determination(AlgorithmId id) {
  return id == AlgorithmId::Triad || id == AlgorithmId::Quest || id == AlgorithmId::Svd;
}

RotationMatrix InitSpec::r_hat0() const {
  return angle_axis_to_rot({angle_deg / kRadToDeg, axis.normalized()});
}

void ExperimentConfig::validate() const {
  if (!(trajectory.dt_s > 0.0)) throw Error(Errc::ConfigError, "dt_s must be positive");
  if (trajectory.duration_s < trajectory.dt_s)
    throw Error(Errc::ConfigError, "duration_s must be at least dt_s");
  sensors.validate();
  if (algorithms.empty()) throw Error(Errc::ConfigError, "no algorithms configured");
  std::set<std::string> labels;
  for (const auto& a : algorithms)
    if (!labels.insert(a.label).second)
      throw Error(Errc::ConfigError, "duplicate algorithm label: " + a.label);
  if (seeds.empty()) throw Error(Errc::ConfigError, "no seeds configured");
  if (window_start < 0.0 || window_end > trajectory.duration_s + 1e-9 ||
      window_end < window_start)
    throw Error(Errc::ConfigError, "stats window must lie inside [0, duration]");
  if (init.axis.norm() < 1e-12) throw Error(Errc::ConfigError, "init axis is zero");
}

RunResult run_single(const AlgorithmSpec& alg, const std::vector<TruthSample>& truth,
                     const std::vector<MeasurementFrame>& frames, const ExperimentConfig& cfg,
                     std::uint64_t seed) {
  RunResult res;
  res.label = alg.label;
  res.id = alg.id;
  res.seed = seed;
  const std::size_t n = truth.size();
  const double dt = cfg.trajectory.dt_s;
  const bool gp = is_gp(alg.id);
  res.t.reserve(n);
  res.dist.reserve(n);
  res.alpha_deg.reserve(n);

  Estimator est;
  est.id = alg.id;
  est.p = &alg.params;
  est.init(cfg.init.r_hat0());

  std::size_t k = 0;
  try {
    if (alg.id == AlgorithmId::Triad) est.r_hat = triad(frames[0]).r_y;
    if (alg.id == AlgorithmId::Quest) est.r_hat = quest(frames[0]).r_y;
    if (alg.id == AlgorithmId::Svd) est.r_hat = svd_wahba(frames[0]).r_y;
    for (k = 0; k < n; ++k) {
      const double t = truth[k].t;
      const RotationMatrix rh = est.estimate();
      const Mat3 err = truth[k].r.transpose() * rh;
      const double d = dist_identity(err);
      res.t.push_back(t);
      res.dist.push_back(d);
      res.alpha_deg.push_back(rot_to_angle_error(err) * kRadToDeg);
      res.b_tilde.push_back(cfg.sensors.gyro_bias - est.bias());
      res.sigma_hat.push_back(est.sigma());
      if (gp) {
        const double env = alg.params.ppf.delta_hi * ppf_envelope(t, alg.params.ppf).xi;
        res.xi_envelope.push_back(env);
        if (!(d < env)) ++res.envelope_breaches;
      }
      if (cfg.output.euler) {
        try {
          const EulerAngles e = euler_extract(rh);
          res.euler_deg.emplace_back(e.phi, e.theta, e.psi);
        } catch (const Error&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          res.euler_deg.emplace_back(nan, nan, nan);
        }
      }
      if (k + 1 < n) est.step(frames[k], frames[k + 1], t, dt, res.events);
    }
  } catch (const std::exception& e) {
    res.failed = true;
    res.failure = e.what();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = res.t.size(); j < n; ++j) {
      res.t.push_back(truth[j].t);
      res.dist.push_back(nan);
      res.alpha_deg.push_back(nan);
      res.b_tilde.emplace_back(nan, nan, nan);
      res.sigma_hat.emplace_back(nan, nan, nan);
      if (gp) res.xi_envelope.push_back(alg.params.ppf.delta_hi * ppf_envelope(truth[j].t, alg.params.ppf).xi);
      if (cfg.output.euler) res.euler_deg.emplace_back(nan, nan, nan);
    }
  }
  return res;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  const auto truth = generate_truth(cfg.trajectory);
  const std::size_t ns = cfg.seeds.size();
  const std::size_t na = cfg.algorithms.size();

  std::vector<std::vector<MeasurementFrame>> frames(ns);
  std::vector<RunResult> results(na * ns);
  const auto n_seeds = static_cast<long>(ns);
  const auto n_tasks = static_cast<long>(na * ns);

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long s = 0; s < n_seeds; ++s)
      frames[s] = synthesize_measurements(truth, cfg.sensors, cfg.seeds[s]);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n_tasks; ++i) {
      const std::size_t a = i / ns, s = i % ns;
      results[i] = run_single(cfg.algorithms[a], truth, frames[s], cfg, cfg.seeds[s]);
    }
  } else {
    for (long s = 0; s < n_seeds; ++s)
      frames[s] = synthesize_measurements(truth, cfg.sensors, cfg.seeds[s]);
    for (long i = 0; i < n_tasks; ++i) {
      const std::size_t a = i / ns, s = i % ns;
      results[i] = run_single(cfg.algorithms[a], truth, frames[s], cfg, cfg.seeds[s]);
    }
  }

  std::stable_sort(results.begin(), results.end(), [](const RunResult& x, const RunResult& y) {
    if (x.label != y.label) return x.label < y.label;
    return x.seed < y.seed;
  });
  return results;
}

std::string verdict_for(double mean_dist) {
  return mean_dist <= kUnstableMeanDist ? "stable" : "unstable";
}

StatsSummary summarize_series(const std::string& label, const std::vector<double>& t,
                              const std::vector<double>& dist,
                              const std::vector<double>& alpha_deg, double t0, double t1) {
  constexpr double tol = 1e-9;
  double sd = 0, sa = 0;
  std::size_t n = 0;
  StatsSummary s;
  s.label = label;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 - tol || t[i] > t1 + tol) continue;
    sd += dist[i];
    sa += alpha_deg[i];
    s.inf_dist = std::max(s.inf_dist, std::abs(dist[i]));
    s.inf_alpha = std::max(s.inf_alpha, std::abs(alpha_deg[i]));
    if (std::isnan(dist[i])) s.inf_dist = dist[i];
    if (std::isnan(alpha_deg[i])) s.inf_alpha = alpha_deg[i];
    ++n;
  }
  if (n == 0) throw Error(Errc::EmptyWindow, "no samples inside the stats window");
  s.mean_dist = sd / n;
  s.mean_alpha = sa / n;
  double vd = 0, va = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 - tol || t[i] > t1 + tol) continue;
    vd += (dist[i] - s.mean_dist) * (dist[i] - s.mean_dist);
    va += (alpha_deg[i] - s.mean_alpha) * (alpha_deg[i] - s.mean_alpha);
  }
  s.std_dist = std::sqrt(vd / n);
  s.std_alpha = std::sqrt(va / n);
  s.verdict = verdict_for(s.mean_dist);
  return s;
}

StatsSummary summarize(const RunResult& run, double t0, double t1) {
  return summarize_series(run.label, run.t, run.dist, run.alpha_deg, t0, t1);
}

std::vector<StatsSummary> summarize_ensemble(const std::vector<RunResult>& runs, double t0,
                                             double t1) {
  std::map<std::string, std::vector<StatsSummary>> by_label;
  std::vector<std::string> order;
  for (const auto& r : runs) {
    if (!by_label.count(r.label)) order.push_back(r.label);
    by_label[r.label].push_back(summarize(r, t0, t1));
  }
  std::vector<StatsSummary> out;
  for (const auto& label : order) {
    const auto& v = by_label[label];
    StatsSummary e;
    e.label = label;
    for (const auto& s : v) {
      e.mean_dist += s.mean_dist / v.size();
      e.std_dist += s.std_dist / v.size();
      e.mean_alpha += s.mean_alpha / v.size();
      e.std_alpha += s.std_alpha / v.size();
      e.inf_dist = std::isnan(s.inf_dist) ? s.inf_dist : std::max(e.inf_dist, s.inf_dist);
      e.inf_alpha = std::isnan(s.inf_alpha) ? s.inf_alpha : std::max(e.inf_alpha, s.inf_alpha);
    }
    e.verdict = verdict_for(e.mean_dist);
    out.push_back(e);
  }
  return out;
}

EulerAngles euler_extract(const RotationMatrix& r) {
  const double s = std::clamp(-r(2, 0), -1.0, 1.0);
  const double theta = std::asin(s);
  if (std::abs(std::abs(theta) - std::numbers::pi / 2.0) <= 1e-6)
    throw Error(Errc::GimbalLock, "pitch at +-90 degrees");
  EulerAngles e;
  e.theta = theta * kRadToDeg;
  e.phi = std::atan2(r(2, 1), r(2, 2)) * kRadToDeg;
  e.psi = std::atan2(r(1, 0), r(0, 0)) * kRadToDeg;
  return e;
}

RotationMatrix euler_compose(const EulerAngles& e) {
  const double d = 1.0 / kRadToDeg;
  return exp_so3(Vec3(0, 0, e.psi * d)) * exp_so3(Vec3(0, e.theta * d, 0)) *
         exp_so3(Vec3(e.phi * d, 0, 0));
}

}  // namespace att
