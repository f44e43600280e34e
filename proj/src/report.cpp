#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "attitude/errors.hpp"
#include "attitude/harness.hpp"

namespace att {

namespace fs = std::filesystem;

namespace {

// Shortest text that parses back to the same double.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::IoError, "bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(Errc::IoError, "bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// File names keep alphanumerics, '-' and '_'.
std::string slug(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
      out += c;
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "run" : out;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(Errc::IoError, "cannot write '" + p.string() + "'");
  return os;
}

const char* kTableHeader =
    "label,mean_dist,std_dist,inf_dist,mean_alpha,std_alpha,inf_alpha,verdict";

}  // namespace

void emit_table(std::ostream& os, const std::vector<StatsSummary>& rows) {
  os << kTableHeader << '\n';
  for (const auto& r : rows) {
    os << quote(r.label) << ',' << fmt(r.mean_dist) << ',' << fmt(r.std_dist) << ','
       << fmt(r.inf_dist) << ',' << fmt(r.mean_alpha) << ',' << fmt(r.std_alpha) << ','
       << fmt(r.inf_alpha) << ',' << r.verdict << '\n';
  }
}

std::vector<StatsSummary> parse_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::IoError, "empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTableHeader) throw Error(Errc::IoError, "unexpected table header");
  std::vector<StatsSummary> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw Error(Errc::IoError, "table row needs 8 fields");
    StatsSummary s;
    s.label = f[0];
    s.mean_dist = parse_double(f[1]);
    s.std_dist = parse_double(f[2]);
    s.inf_dist = parse_double(f[3]);
    s.mean_alpha = parse_double(f[4]);
    s.std_alpha = parse_double(f[5]);
    s.inf_alpha = parse_double(f[6]);
    s.verdict = f[7];
    rows.push_back(s);
  }
  return rows;
}

void emit_plot_data(std::ostream& os, const RunResult& run) {
  const bool env = !run.xi_envelope.empty();
  os << "t,dist,alpha_deg,b_tilde_x,b_tilde_y,b_tilde_z";
  if (!run.sigma_hat.empty()) os << ",sigma_x,sigma_y,sigma_z";
  if (env) os << ",xi_envelope";
  os << '\n';
  for (std::size_t k = 0; k < run.t.size(); ++k) {
    os << fmt(run.t[k]) << ',' << fmt(run.dist[k]) << ',' << fmt(run.alpha_deg[k]);
    for (int i = 0; i < 3; ++i) os << ',' << fmt(run.b_tilde[k](i));
    if (!run.sigma_hat.empty())
      for (int i = 0; i < 3; ++i) os << ',' << fmt(run.sigma_hat[k](i));
    if (env) os << ',' << fmt(run.xi_envelope[k]);
    os << '\n';
  }
}

void write_outputs(const ExperimentConfig& cfg, const std::vector<RunResult>& runs,
                   const std::string& dir) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(Errc::IoError, "cannot create '" + dir + "': " + ec.message());

  {
    auto os = open_out(root / "table.csv");
    emit_table(os, summarize_ensemble(runs, cfg.window_start, cfg.window_end));
  }
  {
    auto os = open_out(root / "table_runs.csv");
    std::vector<StatsSummary> rows;
    for (const auto& r : runs) {
      StatsSummary s;
      try {
        s = summarize(r, cfg.window_start, cfg.window_end);
      } catch (const Error&) {
        s.mean_dist = s.std_dist = s.inf_dist = std::nan("");
        s.mean_alpha = s.std_alpha = s.inf_alpha = std::nan("");
        s.verdict = "unstable";
      }
      s.label = r.label + "@" + std::to_string(r.seed);
      rows.push_back(s);
    }
    emit_table(os, rows);
  }
  {
    auto os = open_out(root / "events.csv");
    os << "label,seed,funnel_violation,unstable_set,gain_singularity,envelope_breaches,failure\n";
    for (const auto& r : runs)
      os << quote(r.label) << ',' << r.seed << ',' << r.events.funnel_violation << ','
         << r.events.unstable_set << ',' << r.events.gain_singularity << ','
         << r.envelope_breaches << ',' << quote(r.failure) << '\n';
  }

  if (cfg.output.plots) {
    fs::create_directories(root / "plots");
    for (const auto& r : runs) {
      auto os = open_out(root / "plots" / (slug(r.label) + "_seed" + std::to_string(r.seed) + ".csv"));
      emit_plot_data(os, r);
    }
  }

  if (cfg.output.frames) {
    fs::create_directories(root / "frames");
    const auto truth = generate_truth(cfg.trajectory);
    for (auto seed : cfg.seeds) {
      auto os = open_out(root / "frames" / ("seed" + std::to_string(seed) + ".csv"));
      write_frames_csv(os, synthesize_measurements(truth, cfg.sensors, seed));
    }
  }

  if (cfg.output.euler) {
    fs::create_directories(root / "euler");
    for (const auto& r : runs) {
      if (r.euler_deg.empty()) continue;
      auto os = open_out(root / "euler" / (slug(r.label) + "_seed" + std::to_string(r.seed) + ".csv"));
      os << "t,phi_deg,theta_deg,psi_deg\n";
      for (std::size_t k = 0; k < r.t.size(); ++k)
        os << fmt(r.t[k]) << ',' << fmt(r.euler_deg[k](0)) << ',' << fmt(r.euler_deg[k](1)) << ','
           << fmt(r.euler_deg[k](2)) << '\n';
    }
  }
}

}  // namespace att
