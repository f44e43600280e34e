#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "attitude/errors.hpp"
#include "attitude/harness.hpp"

namespace att {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::ConfigError, msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + where);
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where + " must be a 3-element array");
  return Vec3(num(j[0], where), num(j[1], where), num(j[2], where));
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

// A number c means c * I; otherwise a 3x3 nested array.
Mat3 mat3(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>() * Mat3::Identity();
  if (!j.is_array() || j.size() != 3) fail(where + " must be a number or a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = vec3(j[r], where).transpose();
  return m;
}

json to_json(const Mat3& m) {
  if (m == m(0, 0) * Mat3::Identity()) return m(0, 0);
  json a = json::array();
  for (int r = 0; r < 3; ++r) a.push_back(to_json(Vec3(m.row(r).transpose())));
  return a;
}

DeterminationMethod parse_backend(const json& j) {
  if (!j.is_string()) fail("ry must be a string");
  const auto s = j.get<std::string>();
  if (s == "svd") return DeterminationMethod::Svd;
  if (s == "quest") return DeterminationMethod::Quest;
  if (s == "triad") return DeterminationMethod::Triad;
  fail("unknown ry backend '" + s + "'");
}

const char* backend_name(DeterminationMethod m) {
  switch (m) {
    case DeterminationMethod::Triad: return "triad";
    case DeterminationMethod::Quest: return "quest";
    case DeterminationMethod::Svd: return "svd";
  }
  return "svd";
}

enum class Family { Determination, Gaussian, ConstantGain, Ppf, Nsaf };

Family family(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::Triad:
    case AlgorithmId::Quest:
    case AlgorithmId::Svd: return Family::Determination;
    case AlgorithmId::Kf:
    case AlgorithmId::KfBias:
    case AlgorithmId::Mekf:
    case AlgorithmId::Gamef: return Family::Gaussian;
    case AlgorithmId::CgNdafSd:
    case AlgorithmId::CgNdafD:
    case AlgorithmId::AgNdaf: return Family::ConstantGain;
    case AlgorithmId::AgiNsaf:
    case AlgorithmId::AgsNsaf: return Family::Nsaf;
    default: return Family::Ppf;
  }
}

AlgorithmParams parse_params(AlgorithmId id, json j) {
  AlgorithmParams p;
  if (j.is_null()) return p;
  const std::string where = "params of " + algorithm_name(id);
  const bool kf = id == AlgorithmId::Kf || id == AlgorithmId::KfBias;
  if (j.is_object() && j.contains("max_correction_step") && family(id) != Family::Determination &&
      !kf) {
    p.max_correction_step = num(j["max_correction_step"], "max_correction_step");
    if (p.max_correction_step < 0.0) fail("max_correction_step must be >= 0");
    j.erase("max_correction_step");
  }
  switch (family(id)) {
    case Family::Determination:
      check_keys(j, {}, where);
      break;
    case Family::Gaussian: {
      check_keys(j, {"qv", "qw", "qb", "kf_alpha", "kf_sigma123", "kf_eta", "kf_epsilon", "kf_rho",
                     "kf_p0", "pa0", "pb0", "riccati_substeps", "gamef_clip_curvature"},
                 where);
      auto& g = p.gauss;
      if (j.contains("qv")) {
        // c, [[3x3]], or a per-vector list of either
        const json& q = j["qv"];
        g.qv.clear();
        const bool single_matrix = q.is_array() && !q.empty() && q[0].is_array() &&
                                   !q[0].empty() && q[0][0].is_number();
        if (q.is_number() || single_matrix) {
          g.qv.push_back(mat3(q, "qv"));
        } else if (q.is_array() && !q.empty()) {
          for (const auto& e : q) g.qv.push_back(mat3(e, "qv"));
        } else {
          fail("qv must be a number, a 3x3 array or a non-empty list of those");
        }
      }
      if (j.contains("qw")) g.qw = mat3(j["qw"], "qw");
      if (j.contains("qb")) g.qb = mat3(j["qb"], "qb");
      if (j.contains("kf_alpha")) g.kf_alpha = num(j["kf_alpha"], "kf_alpha");
      if (j.contains("kf_sigma123")) g.kf_sigma123 = vec3(j["kf_sigma123"], "kf_sigma123");
      if (j.contains("kf_eta")) g.kf_eta = num(j["kf_eta"], "kf_eta");
      if (j.contains("kf_epsilon")) g.kf_epsilon = num(j["kf_epsilon"], "kf_epsilon");
      if (j.contains("kf_rho")) g.kf_rho = num(j["kf_rho"], "kf_rho");
      if (j.contains("kf_p0")) p.kf_p0 = num(j["kf_p0"], "kf_p0");
      if (j.contains("pa0")) p.pa0 = num(j["pa0"], "pa0");
      if (j.contains("pb0")) p.pb0 = num(j["pb0"], "pb0");
      if (j.contains("gamef_clip_curvature")) {
        if (!j["gamef_clip_curvature"].is_boolean()) fail("gamef_clip_curvature must be a boolean");
        g.gamef_clip_curvature = j["gamef_clip_curvature"].get<bool>();
      }
      if (j.contains("riccati_substeps")) {
        g.riccati_substeps = static_cast<int>(num(j["riccati_substeps"], "riccati_substeps"));
        if (g.riccati_substeps < 1) fail("riccati_substeps must be >= 1");
      }
      break;
    }
    case Family::ConstantGain:
      check_keys(j, {"kw", "gamma", "ry"}, where);
      if (j.contains("kw")) p.cg.kw = num(j["kw"], "kw");
      if (j.contains("gamma")) p.cg.gamma = num(j["gamma"], "gamma");
      if (j.contains("ry")) p.ry_backend = parse_backend(j["ry"]);
      break;
    case Family::Ppf: {
      check_keys(j, {"kw", "gamma", "gamma1", "gamma2", "xi0", "xi_inf", "ell", "delta_hi",
                     "delta_lo", "sigma_eps_factor", "ry"},
                 where);
      auto& f = p.ppf;
      if (j.contains("kw")) f.kw = num(j["kw"], "kw");
      if (j.contains("gamma")) f.gamma = num(j["gamma"], "gamma");
      if (j.contains("gamma1")) f.gamma1 = num(j["gamma1"], "gamma1");
      if (j.contains("gamma2")) f.gamma2 = num(j["gamma2"], "gamma2");
      if (j.contains("xi0")) f.xi0 = num(j["xi0"], "xi0");
      if (j.contains("xi_inf")) f.xi_inf = num(j["xi_inf"], "xi_inf");
      if (j.contains("ell")) f.ell = num(j["ell"], "ell");
      if (j.contains("delta_hi")) f.delta_hi = num(j["delta_hi"], "delta_hi");
      if (j.contains("delta_lo")) f.delta_lo = num(j["delta_lo"], "delta_lo");
      if (j.contains("sigma_eps_factor")) {
        if (!j["sigma_eps_factor"].is_boolean()) fail("sigma_eps_factor must be a boolean");
        p.sigma_eps_factor = j["sigma_eps_factor"].get<bool>();
      }
      if (j.contains("ry")) p.ry_backend = parse_backend(j["ry"]);
      if (!(f.xi0 > f.xi_inf && f.xi_inf > 0.0 && f.ell > 0.0))
        fail("envelope needs xi0 > xi_inf > 0 and ell > 0");
      if (!(f.delta_hi > 0.0 && f.delta_lo > 0.0)) fail("delta bounds must be positive");
      break;
    }
    case Family::Nsaf:
      check_keys(j, {"kw", "k2", "eps", "gamma1", "gamma2", "kb", "ksigma", "ry"}, where);
      if (j.contains("kw")) p.nsaf.kw = num(j["kw"], "kw");
      if (j.contains("k2")) p.nsaf.k2 = num(j["k2"], "k2");
      if (j.contains("eps")) p.nsaf.eps = num(j["eps"], "eps");
      if (j.contains("gamma1")) p.nsaf.gamma1 = num(j["gamma1"], "gamma1");
      if (j.contains("gamma2")) p.nsaf.gamma2 = num(j["gamma2"], "gamma2");
      if (j.contains("kb")) p.nsaf.kb = num(j["kb"], "kb");
      if (j.contains("ksigma")) p.nsaf.ksigma = num(j["ksigma"], "ksigma");
      if (j.contains("ry")) p.ry_backend = parse_backend(j["ry"]);
      break;
  }
  return p;
}

json params_to_json(AlgorithmId id, const AlgorithmParams& p) {
  json j = json::object();
  switch (family(id)) {
    case Family::Determination: break;
    case Family::Gaussian: {
      const auto& g = p.gauss;
      if (g.qv.size() == 1) {
        j["qv"] = to_json(g.qv[0]);
      } else {
        j["qv"] = json::array();
        for (const auto& m : g.qv) j["qv"].push_back(to_json(m));
      }
      j["qw"] = to_json(g.qw);
      j["qb"] = to_json(g.qb);
      j["pa0"] = p.pa0;
      j["pb0"] = p.pb0;
      j["riccati_substeps"] = g.riccati_substeps;
      if (id == AlgorithmId::Gamef) j["gamef_clip_curvature"] = g.gamef_clip_curvature;
      if (id == AlgorithmId::Kf || id == AlgorithmId::KfBias) {
        j["kf_alpha"] = g.kf_alpha;
        j["kf_sigma123"] = to_json(g.kf_sigma123);
        j["kf_eta"] = g.kf_eta;
        j["kf_epsilon"] = g.kf_epsilon;
        j["kf_rho"] = g.kf_rho;
        j["kf_p0"] = p.kf_p0;
        j.erase("pa0");
        j.erase("pb0");
        j.erase("riccati_substeps");
        j.erase("qv");
        j.erase("qw");
        j.erase("qb");
      }
      break;
    }
    case Family::ConstantGain:
      j["kw"] = p.cg.kw;
      j["gamma"] = p.cg.gamma;
      j["ry"] = backend_name(p.ry_backend);
      break;
    case Family::Ppf: {
      const auto& f = p.ppf;
      j["kw"] = f.kw;
      j["xi0"] = f.xi0;
      j["xi_inf"] = f.xi_inf;
      j["ell"] = f.ell;
      j["delta_hi"] = f.delta_hi;
      j["delta_lo"] = f.delta_lo;
      if (id == AlgorithmId::GpNdafSd || id == AlgorithmId::GpNdafD) {
        j["gamma"] = f.gamma;
      } else {
        j["gamma1"] = f.gamma1;
        j["gamma2"] = f.gamma2;
        if (id == AlgorithmId::GpNsafSd) j["sigma_eps_factor"] = p.sigma_eps_factor;
      }
      if (id == AlgorithmId::GpNdafSd || id == AlgorithmId::GpNsafSd)
        j["ry"] = backend_name(p.ry_backend);
      break;
    }
    case Family::Nsaf:
      j["kw"] = p.nsaf.kw;
      j["k2"] = p.nsaf.k2;
      j["eps"] = p.nsaf.eps;
      j["gamma1"] = p.nsaf.gamma1;
      j["gamma2"] = p.nsaf.gamma2;
      j["kb"] = p.nsaf.kb;
      j["ksigma"] = p.nsaf.ksigma;
      j["ry"] = backend_name(p.ry_backend);
      break;
  }
  if (p.max_correction_step > 0.0) j["max_correction_step"] = p.max_correction_step;
  return j;
}

OmegaProfile parse_profile(const json& j) {
  if (!j.is_string()) fail("profile must be a string");
  const auto s = j.get<std::string>();
  if (s == "reference") return OmegaProfile::Reference;
  if (s == "zero") return OmegaProfile::Zero;
  if (s == "constant") return OmegaProfile::Constant;
  fail("unknown profile '" + s + "'");
}

const char* profile_name(OmegaProfile p) {
  switch (p) {
    case OmegaProfile::Reference: return "reference";
    case OmegaProfile::Zero: return "zero";
    case OmegaProfile::Constant: return "constant";
  }
  return "reference";
}

json rotation_to_json(const RotationMatrix& r) {
  const UnitQuaternion q = rot_to_quat(r);
  const double s = q.tail<3>().norm();
  const double angle = 2.0 * std::atan2(s, q(0)) * 180.0 / std::numbers::pi;
  const Vec3 axis = s > 1e-15 ? Vec3(q.tail<3>() / s) : Vec3::UnitX();
  return {{"angle_deg", angle}, {"axis", to_json(axis)}};
}

RotationMatrix rotation_from_json(const json& j, const std::string& where) {
  check_keys(j, {"angle_deg", "axis"}, where);
  const double a = j.contains("angle_deg") ? num(j["angle_deg"], where) : 0.0;
  const Vec3 axis = j.contains("axis") ? vec3(j["axis"], where) : Vec3::UnitX();
  if (axis.norm() < 1e-12) fail(where + " axis is zero");
  return angle_axis_to_rot({a * std::numbers::pi / 180.0, axis.normalized()});
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, {"trajectory", "sensors", "init", "algorithms", "seeds", "stats_window", "output"},
             "config");
  ExperimentConfig cfg;

  if (root.contains("trajectory")) {
    const json& t = root["trajectory"];
    check_keys(t, {"duration_s", "dt_s", "profile", "constant_omega", "r0"}, "trajectory");
    if (t.contains("duration_s")) cfg.trajectory.duration_s = num(t["duration_s"], "duration_s");
    if (t.contains("dt_s")) cfg.trajectory.dt_s = num(t["dt_s"], "dt_s");
    if (t.contains("profile")) cfg.trajectory.profile = parse_profile(t["profile"]);
    if (t.contains("constant_omega"))
      cfg.trajectory.constant_omega = vec3(t["constant_omega"], "constant_omega");
    if (t.contains("r0")) cfg.trajectory.r0 = rotation_from_json(t["r0"], "r0");
  }

  if (!root.contains("sensors")) fail("missing 'sensors'");
  {
    const json& s = root["sensors"];
    check_keys(s, {"gyro_bias", "gyro_noise_std", "vectors", "weights", "derive_third_by_cross"},
               "sensors");
    auto& ss = cfg.sensors;
    if (s.contains("gyro_bias")) ss.gyro_bias = vec3(s["gyro_bias"], "gyro_bias");
    if (s.contains("gyro_noise_std")) ss.gyro_noise_std = num(s["gyro_noise_std"], "gyro_noise_std");
    if (!s.contains("vectors") || !s["vectors"].is_array()) fail("sensors.vectors must be an array");
    for (const auto& v : s["vectors"]) {
      check_keys(v, {"ref", "bias", "noise_std"}, "sensors.vectors[]");
      if (!v.contains("ref")) fail("sensors.vectors[] needs 'ref'");
      ss.vec_refs.push_back(vec3(v["ref"], "ref"));
      ss.vec_biases.push_back(v.contains("bias") ? vec3(v["bias"], "bias") : Vec3::Zero());
      ss.vec_noise_stds.push_back(v.contains("noise_std") ? num(v["noise_std"], "noise_std") : 0.0);
    }
    if (s.contains("derive_third_by_cross")) {
      if (!s["derive_third_by_cross"].is_boolean()) fail("derive_third_by_cross must be a boolean");
      ss.derive_third_by_cross = s["derive_third_by_cross"].get<bool>();
    }
    if (s.contains("weights")) {
      if (!s["weights"].is_array()) fail("weights must be an array");
      for (const auto& w : s["weights"]) ss.weights.push_back(num(w, "weights[]"));
    } else {
      ss.weights.assign(ss.vector_count(), 1.0);
    }
  }

  if (root.contains("init")) {
    const json& i = root["init"];
    check_keys(i, {"angle_deg", "axis"}, "init");
    if (i.contains("angle_deg")) cfg.init.angle_deg = num(i["angle_deg"], "init.angle_deg");
    if (i.contains("axis")) cfg.init.axis = vec3(i["axis"], "init.axis");
  }

  if (!root.contains("algorithms") || !root["algorithms"].is_array())
    fail("'algorithms' must be an array");
  for (const auto& a : root["algorithms"]) {
    check_keys(a, {"id", "label", "params"}, "algorithms[]");
    if (!a.contains("id") || !a["id"].is_string()) fail("algorithms[] needs a string 'id'");
    const auto id = parse_algorithm(a["id"].get<std::string>());
    if (!id) fail("unknown algorithm id '" + a["id"].get<std::string>() + "'");
    AlgorithmSpec spec;
    spec.id = *id;
    spec.label = a.contains("label") ? a["label"].get<std::string>() : algorithm_name(*id);
    spec.params = parse_params(*id, a.contains("params") ? a["params"] : json());
    cfg.algorithms.push_back(spec);
  }

  if (root.contains("seeds")) {
    if (!root["seeds"].is_array()) fail("seeds must be an array");
    cfg.seeds.clear();
    for (const auto& s : root["seeds"]) {
      if (!s.is_number_unsigned()) fail("seeds must be non-negative integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (root.contains("stats_window")) {
    const json& w = root["stats_window"];
    if (!w.is_array() || w.size() != 2) fail("stats_window must be [t_start, t_end]");
    cfg.window_start = num(w[0], "stats_window");
    cfg.window_end = num(w[1], "stats_window");
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, {"dir", "plots", "frames", "euler"}, "output");
    if (o.contains("dir")) cfg.output.dir = o["dir"].get<std::string>();
    if (o.contains("plots")) cfg.output.plots = o["plots"].get<bool>();
    if (o.contains("frames")) cfg.output.frames = o["frames"].get<bool>();
    if (o.contains("euler")) cfg.output.euler = o["euler"].get<bool>();
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& cfg) {
  json root;
  json t = {{"duration_s", cfg.trajectory.duration_s},
            {"dt_s", cfg.trajectory.dt_s},
            {"profile", profile_name(cfg.trajectory.profile)},
            {"r0", rotation_to_json(cfg.trajectory.r0)}};
  if (cfg.trajectory.profile == OmegaProfile::Constant)
    t["constant_omega"] = to_json(cfg.trajectory.constant_omega);
  root["trajectory"] = t;

  json vectors = json::array();
  for (std::size_t i = 0; i < cfg.sensors.vec_refs.size(); ++i)
    vectors.push_back({{"ref", to_json(cfg.sensors.vec_refs[i])},
                       {"bias", to_json(cfg.sensors.vec_biases[i])},
                       {"noise_std", cfg.sensors.vec_noise_stds[i]}});
  root["sensors"] = {{"gyro_bias", to_json(cfg.sensors.gyro_bias)},
                     {"gyro_noise_std", cfg.sensors.gyro_noise_std},
                     {"vectors", vectors},
                     {"derive_third_by_cross", cfg.sensors.derive_third_by_cross},
                     {"weights", cfg.sensors.weights}};
  root["init"] = {{"angle_deg", cfg.init.angle_deg}, {"axis", to_json(cfg.init.axis)}};

  json algs = json::array();
  for (const auto& a : cfg.algorithms)
    algs.push_back({{"id", algorithm_name(a.id)},
                    {"label", a.label},
                    {"params", params_to_json(a.id, a.params)}});
  root["algorithms"] = algs;
  root["seeds"] = cfg.seeds;
  root["stats_window"] = {cfg.window_start, cfg.window_end};
  root["output"] = {{"dir", cfg.output.dir},
                    {"plots", cfg.output.plots},
                    {"frames", cfg.output.frames},
                    {"euler", cfg.output.euler}};
  return root.dump(2) + "\n";
}

TrajectoryConfig paper_trajectory() {
  TrajectoryConfig t;
  t.duration_s = 30.0;
  t.dt_s = 0.01;
  t.profile = OmegaProfile::Reference;
  t.r0 = Mat3::Identity();
  return t;
}

SensorSpec paper_sensors() {
  SensorSpec s;
  s.gyro_bias = Vec3(-0.1, 0.1, 0.05);
  s.gyro_noise_std = 0.2;
  s.vec_refs = {Vec3(1, -1, 1), Vec3(0, 0, 1)};
  s.vec_biases = {Vec3(0.13, -0.13, 0.13), Vec3(0, 0, 0.13)};
  s.vec_noise_stds = {0.13, 0.13};
  s.derive_third_by_cross = true;
  s.weights = {1.0, 1.0, 1.0};
  return s;
}

// The filter sets are compared as continuous-time observers, so their
// presets integrate in controlled sub-steps between samples.
constexpr double kContinuousStep = 0.01;

std::string preset_set_name(PresetSet s) {
  switch (s) {
    case PresetSet::Determination: return "determination";
    case PresetSet::Gaussian: return "gaussian";
    case PresetSet::Nonlinear: return "nonlinear";
  }
  return "nonlinear";
}

PresetSet parse_preset_set(const std::string& name) {
  for (auto s : {PresetSet::Determination, PresetSet::Gaussian, PresetSet::Nonlinear})
    if (preset_set_name(s) == name) return s;
  fail("unknown preset set '" + name + "' (determination, gaussian, nonlinear)");
}

ExperimentConfig paper_preset(PresetSet set) {
  ExperimentConfig cfg;
  cfg.trajectory = paper_trajectory();
  cfg.sensors = paper_sensors();
  cfg.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  cfg.window_start = 8.0;
  cfg.window_end = 30.0;
  auto add = [&](AlgorithmId id, const std::string& label, AlgorithmParams p = {}) {
    cfg.algorithms.push_back({id, label, p});
  };
  const double cases[3][3] = {{1.0, 1.0, 1.0}, {0.1, 10.0, 10.0}, {0.01, 100.0, 100.0}};
  const double cg_kw[3] = {1.0, 10.0, 100.0};

  switch (set) {
    case PresetSet::Determination:
      cfg.window_start = 0.0;
      cfg.output.dir = "out/determination";
      add(AlgorithmId::Triad, "TRIAD");
      add(AlgorithmId::Quest, "QUEST");
      add(AlgorithmId::Svd, "SVD");
      break;
    case PresetSet::Gaussian:
      cfg.output.dir = "out/gaussian";
      for (int c = 0; c < 3; ++c) {
        AlgorithmParams p;
        p.gauss.qv = {cases[c][0] * Mat3::Identity()};
        p.gauss.qw = cases[c][1] * Mat3::Identity();
        p.gauss.qb = cases[c][2] * Mat3::Identity();
        p.max_correction_step = kContinuousStep;
        add(AlgorithmId::Mekf, "MEKF (Case" + std::to_string(c + 1) + ")", p);
        add(AlgorithmId::Gamef, "GAMEF (Case" + std::to_string(c + 1) + ")", p);
      }
      break;
    case PresetSet::Nonlinear: {
      cfg.output.dir = "out/nonlinear";
      for (int c = 0; c < 3; ++c) {
        AlgorithmParams p;
        p.cg.kw = cg_kw[c];
        p.cg.gamma = 2.0;  // smallest integer gain that settles the bias within 30 s at zero rate
        p.max_correction_step = kContinuousStep;
        add(AlgorithmId::CgNdafSd, "CGSd-NDAF (Case" + std::to_string(c + 1) + ")", p);
        add(AlgorithmId::CgNdafD, "CGD-NDAF (Case" + std::to_string(c + 1) + ")", p);
      }
      AlgorithmParams ag;
      ag.cg.kw = 8.0;
      ag.cg.gamma = 1.0;
      ag.max_correction_step = kContinuousStep;
      add(AlgorithmId::AgNdaf, "AG-NDAF", ag);
      AlgorithmParams gp;  // PpfParams defaults are the reference gains
      gp.max_correction_step = kContinuousStep;
      add(AlgorithmId::GpNdafSd, "GPSd-NDAF", gp);
      add(AlgorithmId::GpNdafD, "GPD-NDAF", gp);
      AlgorithmParams ns;  // NsafGains defaults are the reference gains
      ns.max_correction_step = kContinuousStep;
      add(AlgorithmId::AgiNsaf, "AGI-NSAF", ns);
      add(AlgorithmId::AgsNsaf, "AGS-NSAF", ns);
      add(AlgorithmId::GpNsafSd, "GPSd-NSAF", gp);
      add(AlgorithmId::GpNsafD, "GPD-NSAF", gp);
      break;
    }
  }
  return cfg;
}

}  // namespace att
