#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "attitude/errors.hpp"
#include "attitude/harness.hpp"
#include "util.hpp"

using namespace att;
using testutil::max_abs;
using testutil::Rng;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

ExperimentConfig short_config() {
  ExperimentConfig cfg;
  cfg.trajectory = paper_trajectory();
  cfg.trajectory.duration_s = 2.0;
  cfg.sensors = paper_sensors();
  cfg.seeds = {1, 2, 3};
  cfg.window_start = 0.5;
  cfg.window_end = 2.0;
  for (auto id : all_algorithms()) {
    AlgorithmSpec a;
    a.id = id;
    a.label = algorithm_name(id);
    cfg.algorithms.push_back(a);
  }
  return cfg;
}

std::string file_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("window statistics") {
  const std::vector<double> t{0, 1, 2, 3, 4, 5, 6};
  const std::vector<double> c(7, 0.25);
  const auto s = summarize_series("c", t, c, c, 1, 5);
  CHECK(s.mean_dist == 0.25);
  CHECK(s.std_dist == 0.0);
  CHECK(s.inf_dist == 0.25);

  // in-window samples 0.1, 0.4, 0.2, 0.5, 0.3
  const std::vector<double> d{9, 0.1, 0.4, 0.2, 0.5, 0.3, 9};
  const std::vector<double> a{9, 10, 40, 20, 50, 30, 9};
  const auto r = summarize_series("x", t, d, a, 1, 5);
  CHECK(r.mean_dist == doctest::Approx(0.3));
  CHECK(r.std_dist == doctest::Approx(std::sqrt(0.02)));
  CHECK(r.inf_dist == 0.5);
  CHECK(r.mean_alpha == doctest::Approx(30.0));
  CHECK(r.std_alpha == doctest::Approx(std::sqrt(200.0)));
  CHECK(r.inf_alpha == 50.0);
  CHECK(r.inf_dist >= r.mean_dist);
  CHECK(r.verdict == "unstable");

  bool thrown = false;
  try {
    summarize_series("e", t, d, a, 10, 20);
  } catch (const Error& e) {
    thrown = e.code() == Errc::EmptyWindow;
  }
  CHECK(thrown);

  CHECK(verdict_for(0.05) == "stable");
  CHECK(verdict_for(0.0501) == "unstable");
}

TEST_CASE("ensemble aggregation") {
  RunResult a, b;
  a.label = b.label = "f";
  a.t = b.t = {0, 1};
  a.dist = {0.1, 0.3};
  b.dist = {0.2, 0.2};
  a.alpha_deg = {1, 3};
  b.alpha_deg = {2, 2};
  const auto e = summarize_ensemble({a, b}, 0, 1);
  REQUIRE(e.size() == 1);
  CHECK(e[0].mean_dist == doctest::Approx(0.2));
  CHECK(e[0].std_dist == doctest::Approx(0.05));
  CHECK(e[0].inf_dist == doctest::Approx(0.3));
}

TEST_CASE("table CSV") {
  std::ostringstream empty;
  emit_table(empty, {});
  CHECK(empty.str() ==
        "label,mean_dist,std_dist,inf_dist,mean_alpha,std_alpha,inf_alpha,verdict\n");

  Rng rng(401);
  std::vector<StatsSummary> rows;
  for (const char* label : {"MEKF (Case1)", "odd, \"label\"", "x"}) {
    StatsSummary s;
    s.label = label;
    s.mean_dist = rng.uni(0, 1);
    s.std_dist = rng.uni(0, 1) / 3.0;
    s.inf_dist = std::nextafter(1.0, 0.0);
    s.mean_alpha = 1e-300;
    s.std_alpha = std::numbers::pi;
    s.inf_alpha = std::nan("");
    s.verdict = "stable";
    rows.push_back(s);
  }
  std::ostringstream one;
  emit_table(one, {rows[0]});
  CHECK(lines_of(one.str()).size() == 2);

  std::ostringstream os;
  emit_table(os, rows);
  std::istringstream is(os.str());
  const auto back = parse_table(is);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].label == rows[i].label);
    CHECK(back[i].mean_dist == rows[i].mean_dist);
    CHECK(back[i].std_dist == rows[i].std_dist);
    CHECK(back[i].inf_dist == rows[i].inf_dist);
    CHECK(back[i].mean_alpha == rows[i].mean_alpha);
    CHECK(back[i].std_alpha == rows[i].std_alpha);
    CHECK(std::isnan(back[i].inf_alpha));
    CHECK(back[i].verdict == rows[i].verdict);
  }
  CHECK(os.str().find('\r') == std::string::npos);

  std::istringstream bad("label,x\n");
  CHECK_THROWS_AS(parse_table(bad), Error);
}

TEST_CASE("Euler angles") {
  const auto z = euler_extract(Mat3::Identity());
  CHECK(z.phi == 0.0);
  CHECK(z.theta == 0.0);
  CHECK(z.psi == 0.0);

  const auto e = euler_extract(exp_so3(Vec3(0, 0, std::numbers::pi / 6)));
  CHECK(e.psi == doctest::Approx(30.0));
  CHECK(std::abs(e.phi) < 1e-12);
  CHECK(std::abs(e.theta) < 1e-12);

  Rng rng(403);
  int checked = 0;
  for (int n = 0; n < 1000; ++n) {
    const Mat3 r = rng.rot();
    try {
      CHECK(max_abs(euler_compose(euler_extract(r)) - r) < 1e-9);
      ++checked;
    } catch (const Error& err) {
      CHECK(err.code() == Errc::GimbalLock);
    }
  }
  CHECK(checked > 990);

  bool thrown = false;
  try {
    euler_extract(exp_so3(Vec3(0, std::numbers::pi / 2, 0)));
  } catch (const Error& err) {
    thrown = err.code() == Errc::GimbalLock;
  }
  CHECK(thrown);
}

TEST_CASE("algorithm registry") {
  CHECK(all_algorithms().size() == 16);
  for (auto id : all_algorithms()) {
    const auto back = parse_algorithm(algorithm_name(id));
    REQUIRE(back);
    CHECK(*back == id);
    CHECK(std::string(algorithm_description(id)).size() > 0);
  }
  CHECK_FALSE(parse_algorithm("nope"));
  CHECK(is_gp(AlgorithmId::GpNdafD));
  CHECK(is_gp(AlgorithmId::GpNsafSd));
  CHECK_FALSE(is_gp(AlgorithmId::AgNdaf));
  CHECK(is_determination(AlgorithmId::Quest));
  CHECK_FALSE(is_determination(AlgorithmId::Kf));
}

TEST_CASE("runs start at the initial estimate") {
  const auto cfg = short_config();
  const auto runs = run_experiment(cfg, Execution::Serial);
  CHECK(runs.size() == cfg.algorithms.size() * cfg.seeds.size());
  for (const auto& r : runs) {
    CHECK_FALSE(r.failed);
    CHECK(r.t.size() == cfg.trajectory.sample_count());
    if (!is_determination(r.id)) CHECK(std::abs(r.dist[0] - 0.9997) <= 1e-4);
    CHECK(r.xi_envelope.empty() != is_gp(r.id));
  }
  // sorted by label then seed
  for (std::size_t i = 1; i < runs.size(); ++i) {
    const bool ordered = runs[i - 1].label < runs[i].label ||
                         (runs[i - 1].label == runs[i].label && runs[i - 1].seed < runs[i].seed);
    CHECK(ordered);
  }
}

TEST_CASE("clean sensors give exact TRIAD") {
  ExperimentConfig cfg;
  cfg.trajectory = paper_trajectory();
  cfg.sensors = paper_sensors();
  cfg.sensors.gyro_bias.setZero();
  cfg.sensors.gyro_noise_std = 0.0;
  for (auto& b : cfg.sensors.vec_biases) b.setZero();
  for (auto& s : cfg.sensors.vec_noise_stds) s = 0.0;
  cfg.algorithms = {AlgorithmSpec{AlgorithmId::Triad, "TRIAD", {}}};
  const auto runs = run_experiment(cfg);
  for (double d : runs[0].dist) CHECK(d <= 1e-9);
}

TEST_CASE("serial and parallel execution agree exactly") {
  auto cfg = short_config();
  for (auto& a : cfg.algorithms) a.params.max_correction_step = 0.01;
  const auto s = run_experiment(cfg, Execution::Serial);
  const auto p = run_experiment(cfg, Execution::Parallel);
  const auto p2 = run_experiment(cfg, Execution::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].label == p[i].label);
    CHECK(s[i].seed == p[i].seed);
    std::ostringstream a, b, c;
    emit_plot_data(a, s[i]);
    emit_plot_data(b, p[i]);
    emit_plot_data(c, p2[i]);
    CHECK(a.str() == b.str());
    CHECK(b.str() == c.str());
  }
}

TEST_CASE("plot data") {
  auto cfg = short_config();
  cfg.seeds = {1};
  const auto runs = run_experiment(cfg);
  for (const auto& r : runs) {
    std::ostringstream os;
    emit_plot_data(os, r);
    const auto lines = lines_of(os.str());
    CHECK(lines.size() == cfg.trajectory.sample_count() + 1);
    const bool env = lines[0].find("xi_envelope") != std::string::npos;
    CHECK(env == is_gp(r.id));
    CHECK(lines[0].rfind("t,dist,alpha_deg,b_tilde_x,b_tilde_y,b_tilde_z", 0) == 0);
    if (env) {
      const auto& p = cfg.algorithms.front().params.ppf;
      for (std::size_t k = 0; k < r.t.size(); k += 50)
        CHECK(r.xi_envelope[k] == p.delta_hi * ppf_envelope(r.t[k], p).xi);
    }
  }
}

TEST_CASE("config round trip") {
  for (auto set : {PresetSet::Determination, PresetSet::Gaussian, PresetSet::Nonlinear}) {
    const auto cfg = paper_preset(set);
    const std::string text = dump_config(cfg);
    const auto back = parse_config(text);
    CHECK(dump_config(back) == text);
    CHECK(back.algorithms.size() == cfg.algorithms.size());
    CHECK(back.seeds.size() == 10);
  }
  CHECK(parse_preset_set("gaussian") == PresetSet::Gaussian);
  CHECK_THROWS_AS(parse_preset_set("table5"), Error);

  const auto t7 = paper_preset(PresetSet::Gaussian);
  CHECK(t7.window_start == 8.0);
  CHECK(t7.window_end == 30.0);
  const auto& case3 = t7.algorithms[4].params.gauss;
  CHECK(t7.algorithms[4].label == "MEKF (Case3)");
  CHECK(case3.qv_for(0) == 0.01 * Mat3::Identity());
  CHECK(case3.qw == 100.0 * Mat3::Identity());
  CHECK(case3.qb == 100.0 * Mat3::Identity());

  const auto t6 = paper_preset(PresetSet::Determination);
  CHECK(t6.window_start == 0.0);

  const auto t8 = paper_preset(PresetSet::Nonlinear);
  bool saw_gp = false;
  for (const auto& a : t8.algorithms) {
    if (a.id == AlgorithmId::GpNdafSd) {
      saw_gp = true;
      CHECK(a.params.ppf.xi0 == 1.7);
      CHECK(a.params.ppf.xi_inf == 0.08);
      CHECK(a.params.ppf.ell == 4.0);
      CHECK(a.params.ppf.delta_hi == 1.7);
      CHECK(a.params.ppf.kw == 2.0);
    }
  }
  CHECK(saw_gp);
}

TEST_CASE("config errors") {
  const std::string base = R"({"sensors": {"vectors": [{"ref": [1,0,0]}, {"ref": [0,1,0]}]},
                               "algorithms": [{"id": "triad"}]})";
  const auto ok = parse_config(base);
  CHECK(ok.algorithms[0].label == "triad");
  CHECK(ok.sensors.weights.size() == 2);

  auto code = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::IoError;
  };
  CHECK(code("{") == Errc::ConfigError);
  CHECK(code(R"({"sensors": {"vectors": []}, "algorithms": [], "bogus": 1})") == Errc::ConfigError);
  CHECK(code(R"({"sensors": {"vectors": [{"ref": [1,0,0]}, {"ref": [0,1,0]}]},
                 "algorithms": [{"id": "warp_drive"}]})") == Errc::ConfigError);
  CHECK(code(R"({"sensors": {"vectors": [{"ref": [1,0,0]}, {"ref": [0,1,0]}]},
                 "algorithms": [{"id": "mekf", "params": {"kw": 3}}]})") == Errc::ConfigError);
  CHECK(code(R"({"sensors": {"vectors": [{"ref": [1,0,0]}, {"ref": [2,0,0]}]},
                 "algorithms": [{"id": "triad"}]})") == Errc::ConfigError);
  CHECK(code(R"({"sensors": {"vectors": [{"ref": [1,0,0]}, {"ref": [0,1,0]}]},
                 "algorithms": [{"id": "gp_ndaf_sd", "params": {"xi0": 0.01}}]})") ==
        Errc::ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("output files") {
  auto cfg = short_config();
  cfg.seeds = {4};
  cfg.output.frames = true;
  cfg.output.euler = true;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "attitude_test_outputs";
  fs::remove_all(dir);
  const auto runs = run_experiment(cfg);
  write_outputs(cfg, runs, (dir / "a").string());
  write_outputs(cfg, run_experiment(cfg, Execution::Serial), (dir / "b").string());

  for (const char* f : {"table.csv", "table_runs.csv", "events.csv", "frames/seed4.csv",
                        "plots/mekf_seed4.csv", "plots/gp_ndaf_sd_seed4.csv",
                        "euler/svd_seed4.csv"}) {
    INFO(f);
    REQUIRE(fs::exists(dir / "a" / f));
    const std::string a = file_text(dir / "a" / f);
    CHECK(a == file_text(dir / "b" / f));
    CHECK(a.find('\r') == std::string::npos);
  }
  std::ifstream table(dir / "a" / "table.csv");
  const auto rows = parse_table(table);
  CHECK(rows.size() == cfg.algorithms.size());
  for (const auto& r : rows) CHECK(r.inf_dist >= r.mean_dist);
  fs::remove_all(dir);
}
