#pragma once

// Monte-Carlo experiment runner: one shared truth trajectory, per-seed
// measurements, and one independent run per (algorithm, seed).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "attitude/determination.hpp"
#include "attitude/gaussian.hpp"
#include "attitude/nonlinear.hpp"
#include "attitude/sim.hpp"

namespace att {

enum class AlgorithmId {
  Triad,
  Quest,
  Svd,
  Kf,
  KfBias,
  Mekf,
  Gamef,
  CgNdafSd,
  CgNdafD,
  AgNdaf,
  GpNdafSd,
  GpNdafD,
  AgiNsaf,
  AgsNsaf,
  GpNsafSd,
  GpNsafD,
};

const std::vector<AlgorithmId>& all_algorithms();
std::string algorithm_name(AlgorithmId id);
const char* algorithm_description(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm(const std::string& name);
bool is_gp(AlgorithmId id);
bool is_determination(AlgorithmId id);

struct AlgorithmParams {
  GaussianNoiseConfig gauss;
  double kf_p0 = 1.0;  // P(0) = kf_p0 * I for both KF variants
  double pa0 = 1.0;    // MEKF/GAMEF: Pa(0) = pa0 I, Pb(0) = pb0 I, Pc(0) = 0
  double pb0 = 1.0;
  CgGains cg;
  PpfParams ppf;
  NsafGains nsaf;
  DeterminationMethod ry_backend = DeterminationMethod::Svd;
  bool sigma_eps_factor = true;
  // Filters other than KF and the determination methods: when positive,
  // each sample interval is integrated in adaptive sub-steps whose
  // correction rotation stays below this angle [rad]. 0 runs the plain
  // one-step recursion.
  double max_correction_step = 0.0;
};

struct AlgorithmSpec {
  AlgorithmId id = AlgorithmId::Svd;
  std::string label;
  AlgorithmParams params;
};

struct InitSpec {
  double angle_deg = 178.0;
  Vec3 axis = Vec3(8, 7, 4);

  RotationMatrix r_hat0() const;
};

struct OutputSpec {
  std::string dir = "out";
  bool plots = true;
  bool frames = false;
  bool euler = false;
};

struct ExperimentConfig {
  TrajectoryConfig trajectory;
  SensorSpec sensors;
  InitSpec init;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::uint64_t> seeds{1};
  double window_start = 8.0;
  double window_end = 30.0;
  OutputSpec output;

  // Throws ConfigError.
  void validate() const;
};

struct RunResult {
  std::string label;
  AlgorithmId id = AlgorithmId::Svd;
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> dist;
  std::vector<double> alpha_deg;
  std::vector<Vec3> b_tilde;
  std::vector<Vec3> sigma_hat;
  std::vector<double> xi_envelope;  // delta_hi * xi(t), GP filters only
  std::vector<Vec3> euler_deg;      // estimate, only when requested
  StepEvents events;
  long envelope_breaches = 0;       // samples with dist >= delta_hi * xi(t)
  bool failed = false;
  std::string failure;
};

struct StatsSummary {
  std::string label;
  double mean_dist = 0.0, std_dist = 0.0, inf_dist = 0.0;
  double mean_alpha = 0.0, std_alpha = 0.0, inf_alpha = 0.0;
  std::string verdict = "stable";
};

constexpr double kUnstableMeanDist = 0.05;

enum class Execution { Serial, Parallel };

// Runs one algorithm over one seed's frames. `truth` and `frames` align.
RunResult run_single(const AlgorithmSpec& alg, const std::vector<TruthSample>& truth,
                     const std::vector<MeasurementFrame>& frames, const ExperimentConfig& cfg,
                     std::uint64_t seed);

// Results sorted by label, then seed.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg,
                                      Execution exec = Execution::Parallel);

// Throws EmptyWindow.
StatsSummary summarize(const RunResult& run, double t0, double t1);
StatsSummary summarize_series(const std::string& label, const std::vector<double>& t,
                              const std::vector<double>& dist,
                              const std::vector<double>& alpha_deg, double t0, double t1);
// Per-label ensemble: means of the per-seed mean and STD, max of the inf.
std::vector<StatsSummary> summarize_ensemble(const std::vector<RunResult>& runs, double t0,
                                             double t1);
std::string verdict_for(double mean_dist);

void emit_table(std::ostream& os, const std::vector<StatsSummary>& rows);
std::vector<StatsSummary> parse_table(std::istream& is);
void emit_plot_data(std::ostream& os, const RunResult& run);

struct EulerAngles {
  double phi = 0.0, theta = 0.0, psi = 0.0;  // degrees, ZYX
};
// Throws GimbalLock within 1e-6 rad of theta = +-90 deg.
EulerAngles euler_extract(const RotationMatrix& r);
RotationMatrix euler_compose(const EulerAngles& e);

// Writes table.csv, table_runs.csv, plots/, frames/ and euler/ under dir.
void write_outputs(const ExperimentConfig& cfg, const std::vector<RunResult>& runs,
                   const std::string& dir);

// Config I/O (JSON). Throws ConfigError.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);
std::string dump_config(const ExperimentConfig& cfg);

SensorSpec paper_sensors();
TrajectoryConfig paper_trajectory();
enum class PresetSet { Determination, Gaussian, Nonlinear };
std::string preset_set_name(PresetSet s);
// Throws ConfigError.
PresetSet parse_preset_set(const std::string& name);
ExperimentConfig paper_preset(PresetSet set);

}  // namespace att
