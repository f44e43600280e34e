#pragma once

// Ground truth and synthetic sensors.
//
// Noise is raw per-sample Gaussian (not scaled by sqrt(dt)). Each seed owns
// independent sub-streams per channel: channel 0 is the gyro, channel 1 + i
// is reference vector i. A sub-stream is std::mt19937_64 seeded through
// std::seed_seq{lo32(seed), hi32(seed), channel}; normal deviates come from
// boost::random::normal_distribution, whose algorithm is fixed across
// platforms (std::normal_distribution is not).

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "attitude/so3.hpp"

namespace att {

enum class OmegaProfile { Reference, Zero, Constant };

struct TrajectoryConfig {
  double duration_s = 30.0;
  double dt_s = 0.01;
  RotationMatrix r0 = Mat3::Identity();
  OmegaProfile profile = OmegaProfile::Reference;
  Vec3 constant_omega = Vec3::Zero();  // used by OmegaProfile::Constant

  std::size_t sample_count() const;
};

struct SensorSpec {
  Vec3 gyro_bias = Vec3::Zero();
  double gyro_noise_std = 0.0;
  std::vector<Vec3> vec_refs;
  std::vector<Vec3> vec_biases;
  std::vector<double> vec_noise_stds;
  // One weight per vector actually delivered, including a derived third one.
  std::vector<double> weights;
  bool derive_third_by_cross = false;

  std::size_t vector_count() const { return vec_refs.size() + (derive_third_by_cross ? 1 : 0); }
  // Throws ConfigError.
  void validate() const;
};

struct TruthSample {
  double t = 0.0;
  RotationMatrix r = Mat3::Identity();
  Vec3 omega = Vec3::Zero();
};

struct MeasurementFrame {
  double t = 0.0;
  Vec3 omega_m = Vec3::Zero();
  std::vector<Vec3> v_body;
  std::vector<Vec3> v_inertial;
  std::vector<Vec3> upsilon_body;
  std::vector<Vec3> upsilon_inertial;
  std::vector<double> weights;
};

class NoiseStreams {
 public:
  NoiseStreams(std::uint64_t seed, std::size_t vector_channels);
  Vec3 gyro(double std);
  Vec3 vector(std::size_t i, double std);

 private:
  Vec3 draw(std::mt19937_64& eng, double std);
  std::vector<std::mt19937_64> engines_;
};

Vec3 omega_true(double t, const TrajectoryConfig& cfg);
RotationMatrix propagate_truth(const RotationMatrix& r, const Vec3& omega, double dt);

// Throws DegenerateFrame when a vector is too short to normalize.
MeasurementFrame synthesize_frame(const TruthSample& truth, const SensorSpec& spec,
                                  NoiseStreams& noise);

std::vector<TruthSample> generate_truth(const TrajectoryConfig& cfg);
std::vector<MeasurementFrame> synthesize_measurements(const std::vector<TruthSample>& truth,
                                                      const SensorSpec& spec, std::uint64_t seed);
std::pair<std::vector<TruthSample>, std::vector<MeasurementFrame>> run_truth_and_measurements(
    const TrajectoryConfig& cfg, const SensorSpec& spec, std::uint64_t seed);

// Header: t, omega_m_x..z, then vb{i}_x..z, vi{i}_x..z per vector (raw).
void write_frames_csv(std::ostream& os, const std::vector<MeasurementFrame>& frames);

}  // namespace att
