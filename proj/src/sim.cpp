#include "attitude/sim.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/random/normal_distribution.hpp>

#include "attitude/errors.hpp"

namespace att {

std::size_t TrajectoryConfig::sample_count() const {
  return static_cast<std::size_t>(std::floor(duration_s / dt_s + 1e-9)) + 1;
}

void SensorSpec::validate() const {
  if (vec_refs.size() < 2) throw Error(Errc::ConfigError, "at least two reference vectors required");
  if (vec_biases.size() != vec_refs.size() || vec_noise_stds.size() != vec_refs.size())
    throw Error(Errc::ConfigError, "vector biases/noise lists must match the reference list");
  if (weights.size() != vector_count())
    throw Error(Errc::ConfigError, "one weight per delivered vector required");
  if (gyro_noise_std < 0.0) throw Error(Errc::ConfigError, "negative gyro noise");
  for (double s : vec_noise_stds)
    if (s < 0.0) throw Error(Errc::ConfigError, "negative vector noise");
  for (double w : weights)
    if (!(w > 0.0)) throw Error(Errc::ConfigError, "weights must be positive");
  const Vec3 a = vec_refs[0].normalized(), b = vec_refs[1].normalized();
  if (a.cross(b).norm() < 1e-6)
    throw Error(Errc::ConfigError, "first two reference vectors are collinear");
}

NoiseStreams::NoiseStreams(std::uint64_t seed, std::size_t vector_channels) {
  const auto lo = static_cast<std::uint32_t>(seed & 0xffffffffu);
  const auto hi = static_cast<std::uint32_t>(seed >> 32);
  for (std::uint32_t ch = 0; ch < vector_channels + 1; ++ch) {
    std::seed_seq seq{lo, hi, ch};
    engines_.emplace_back(seq);
  }
}

Vec3 NoiseStreams::draw(std::mt19937_64& eng, double std) {
  boost::random::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  for (int i = 0; i < 3; ++i) v(i) = n(eng);
  return std * v;
}

Vec3 NoiseStreams::gyro(double std) { return draw(engines_.at(0), std); }
Vec3 NoiseStreams::vector(std::size_t i, double std) { return draw(engines_.at(i + 1), std); }

Vec3 omega_true(double t, const TrajectoryConfig& cfg) {
  switch (cfg.profile) {
    case OmegaProfile::Reference:
      return Vec3(std::sin(0.4 * t), std::sin(0.7 * t + std::numbers::pi / 4.0),
                  0.4 * std::sin(0.3 * t + std::numbers::pi / 2.0));
    case OmegaProfile::Zero:
      return Vec3::Zero();
    case OmegaProfile::Constant:
      return cfg.constant_omega;
  }
  return Vec3::Zero();
}

RotationMatrix propagate_truth(const RotationMatrix& r, const Vec3& omega, double dt) {
  return orthonormalize(r * exp_so3(omega * dt));
}

static Vec3 unit_or_throw(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-9) throw Error(Errc::DegenerateFrame, "vector too short to normalize");
  return v / n;
}

MeasurementFrame synthesize_frame(const TruthSample& truth, const SensorSpec& spec,
                                  NoiseStreams& noise) {
  MeasurementFrame f;
  f.t = truth.t;
  f.omega_m = truth.omega + spec.gyro_bias + noise.gyro(spec.gyro_noise_std);
  for (std::size_t i = 0; i < spec.vec_refs.size(); ++i) {
    const Vec3& vi = spec.vec_refs[i];
    f.v_inertial.push_back(vi);
    f.v_body.push_back(truth.r.transpose() * vi + spec.vec_biases[i] +
                       noise.vector(i, spec.vec_noise_stds[i]));
  }
  if (spec.derive_third_by_cross) {
    f.v_inertial.push_back(f.v_inertial[0].cross(f.v_inertial[1]));
    f.v_body.push_back(f.v_body[0].cross(f.v_body[1]));
  }
  for (std::size_t i = 0; i < f.v_body.size(); ++i) {
    f.upsilon_body.push_back(unit_or_throw(f.v_body[i]));
    f.upsilon_inertial.push_back(unit_or_throw(f.v_inertial[i]));
  }
  f.weights = spec.weights;
  return f;
}

std::vector<TruthSample> generate_truth(const TrajectoryConfig& cfg) {
  const std::size_t n = cfg.sample_count();
  std::vector<TruthSample> out(n);
  RotationMatrix r = cfg.r0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt_s;
    out[k].t = t;
    out[k].r = r;
    out[k].omega = omega_true(t, cfg);
    r = propagate_truth(r, out[k].omega, cfg.dt_s);
  }
  return out;
}

std::vector<MeasurementFrame> synthesize_measurements(const std::vector<TruthSample>& truth,
                                                      const SensorSpec& spec, std::uint64_t seed) {
  NoiseStreams noise(seed, spec.vec_refs.size());
  std::vector<MeasurementFrame> out;
  out.reserve(truth.size());
  for (const auto& s : truth) out.push_back(synthesize_frame(s, spec, noise));
  return out;
}

std::pair<std::vector<TruthSample>, std::vector<MeasurementFrame>> run_truth_and_measurements(
    const TrajectoryConfig& cfg, const SensorSpec& spec, std::uint64_t seed) {
  auto truth = generate_truth(cfg);
  auto frames = synthesize_measurements(truth, spec, seed);
  return {std::move(truth), std::move(frames)};
}

void write_frames_csv(std::ostream& os, const std::vector<MeasurementFrame>& frames) {
  const std::size_t nv = frames.empty() ? 0 : frames.front().v_body.size();
  os << "t,omega_m_x,omega_m_y,omega_m_z";
  for (std::size_t i = 0; i < nv; ++i)
    os << ",vb" << i << "_x,vb" << i << "_y,vb" << i << "_z";
  for (std::size_t i = 0; i < nv; ++i)
    os << ",vi" << i << "_x,vi" << i << "_y,vi" << i << "_z";
  os << '\n';
  os.precision(17);
  for (const auto& f : frames) {
    os << f.t << ',' << f.omega_m.x() << ',' << f.omega_m.y() << ',' << f.omega_m.z();
    for (const auto& v : f.v_body) os << ',' << v.x() << ',' << v.y() << ',' << v.z();
    for (const auto& v : f.v_inertial) os << ',' << v.x() << ',' << v.y() << ',' << v.z();
    os << '\n';
  }
}

}  // namespace att
