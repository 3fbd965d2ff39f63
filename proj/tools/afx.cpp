#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afx/diagnostics.hpp"
#include "afx/errors.hpp"
#include "afx/problems.hpp"
#include "afx/simd.hpp"
#include "afx/time.hpp"
#include "json.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunOptions {
  std::string problem = "gaussian";
  long nx = 64;
  long ny = 0;
  double cfl = 0.2;
  double t_end = -1.0;
  std::string limiter = "on";
  std::string out = "out";
  std::string format = "bin";
  std::string data;
  int config_id = 12;
  double mach = 0.05;
  std::vector<double> snapshots;
  long progress = 0;
};

struct ConvergenceOptions {
  std::string problem = "gaussian";
  std::vector<long> grids{32, 64, 128, 256};
  double t_end = 0.05;
  double cfl = 0.2;
  std::string limiter = "off";
  std::string out = "out";
  long progress = 0;
};

struct ExtractOptions {
  std::string snapshot;
  std::string mode = "radial";
  double at = 0.0;
  std::string axis = "x";
  std::vector<double> center{0.0, 0.0};
  std::string out;
};

afx::ProblemConfig load_problem(const std::string& name, int config_id, double mach, const std::string& data) {
  afx::ProblemOptions opts;
  opts.config_id = config_id;
  opts.mach = mach;
  if (!data.empty()) opts.laxliu_data = data;
  return afx::problem_by_name(name, opts);
}

void write_any(const std::filesystem::path& dir, const std::string& stem, const afx::Snapshot& s,
               const std::string& format) {
  if (format == "csv") {
    afx::write_snapshot_csv(dir, stem, s);
  } else {
    afx::write_snapshot(dir / (stem + ".afx"), s);
  }
}

afx::Snapshot read_any(const std::filesystem::path& path) {
  if (path.extension() == ".afx") return afx::read_snapshot(path);
  // CSV snapshots are addressed by their meta file: <stem>_meta.txt.
  std::string stem = path.filename().string();
  const std::string suffix = "_meta.txt";
  if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  return afx::read_snapshot_csv(path.parent_path().empty() ? "." : path.parent_path(), stem);
}

nlohmann::json range_json(const afx::FieldRange& r) {
  return {{"min_rho", r.min_rho}, {"max_rho", r.max_rho}, {"min_p", r.min_p}, {"max_p", r.max_p}};
}

int cmd_run(const RunOptions& o) {
  const afx::ProblemConfig problem = load_problem(o.problem, o.config_id, o.mach, o.data);
  afx::RunParams params;
  params.cfl = o.cfl;
  params.t_end = o.t_end >= 0.0 ? o.t_end : problem.t_end;
  params.limiter_on = o.limiter == "on";
  params.snapshot_times = o.snapshots;
  params.snapshot_times.push_back(params.t_end);
  params.progress_every = o.progress;
  const afx::GridSpec spec = afx::make_grid(problem, o.nx, o.ny > 0 ? o.ny : o.nx);

  const std::filesystem::path dir = o.out;
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  int index = 0;
  const auto sink = [&](const afx::DofField& f, const afx::GridSpec& g, double t) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "%s_%04d", problem.name.c_str(), index++);
    write_any(dir, stem, afx::make_snapshot(f, g, t, problem.gas.gamma, params.limiter_on), o.format);
    written.emplace_back(stem);
  };
  afx::DofField field;
  const afx::RunDiagnostics d = afx::run(problem, spec, params, sink, field, &std::cerr);

  nlohmann::json j;
  j["problem"] = problem.name;
  j["nx"] = spec.nx;
  j["ny"] = spec.ny;
  j["cfl"] = params.cfl;
  j["t_end"] = d.time;
  j["limiter"] = params.limiter_on;
  j["steps"] = d.steps;
  j["wall_seconds"] = d.wall_seconds;
  j["simd"] = std::string(afx::simd::name(afx::simd::active_backend()));
  j["initial"] = range_json(d.initial);
  j["final"] = range_json(d.final);
  j["overall"] = range_json(d.overall);
  j["limited_cells"] = {{"hat_only", d.limiter.hat_only}, {"plateau", d.limiter.plateau}};
  j["snapshots"] = written;
  std::ofstream(dir / (problem.name + "_diagnostics.json")) << j.dump(2) << '\n';
  std::cout << "steps=" << d.steps << " t=" << d.time << " min_rho=" << d.overall.min_rho
            << " min_p=" << d.overall.min_p << " max_rho=" << d.overall.max_rho << " wall=" << d.wall_seconds
            << "s\n";
  return 0;
}

int cmd_convergence(const ConvergenceOptions& o) {
  const afx::ProblemConfig problem = load_problem(o.problem, 12, 0.05, "");
  afx::RunParams params;
  params.cfl = o.cfl;
  params.t_end = o.t_end;
  params.limiter_on = o.limiter == "on";
  params.progress_every = o.progress;
  const afx::ConvergenceResult r = afx::convergence_study(problem, o.grids, params, &std::cerr);
  std::filesystem::create_directories(o.out);
  std::ofstream(std::filesystem::path(o.out) / "convergence.json") << afx::report_json(r.report) << '\n';
  std::printf("%8s %14s %8s\n", "n", "L1(rho)", "order");
  for (std::size_t l = 0; l < r.report.l1.size(); ++l) {
    if (l == 0) {
      std::printf("%8ld %14.6e %8s\n", r.report.grid_sizes[l], r.report.l1[l][0], "-");
    } else {
      std::printf("%8ld %14.6e %8.3f\n", r.report.grid_sizes[l], r.report.l1[l][0], r.report.orders[l - 1][0]);
    }
  }
  return 0;
}

int cmd_norms(const std::string& coarse, const std::string& reference) {
  const auto e = afx::l1_point_error(read_any(coarse), read_any(reference));
  std::printf("rho=%.17g\nrhou=%.17g\nrhov=%.17g\ne=%.17g\n", e[0], e[1], e[2], e[3]);
  return 0;
}

int cmd_extract(const ExtractOptions& o) {
  const afx::Snapshot s = read_any(o.snapshot);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw afx::UsageError("cannot write " + o.out);
    os = &file;
  }
  os->precision(17);
  if (o.mode == "radial") {
    *os << "r,rho\n";
    for (const auto& [r, rho] : afx::radial_scatter(s, o.center[0], o.center[1])) *os << r << ',' << rho << '\n';
  } else {
    const auto cut = afx::line_cut(s, o.axis == "x" ? afx::Axis::X : afx::Axis::Y, o.at);
    *os << "# " << o.axis << "=" << cut.coordinate << '\n' << "s,rho,rhou,rhov,e\n";
    for (const auto& [t, q] : cut.samples) *os << t << ',' << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << '\n';
  }
  return 0;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// `key = value` lines ('#' comments) for the options of `sub` that were not
// given on the command line.
void apply_config_file(CLI::App* sub, const std::string& path) {
  if (path.empty() || !sub->parsed()) return;
  std::ifstream in(path);
  if (!in) throw afx::UsageError("cannot read config file " + path);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw afx::UsageError(path + ":" + std::to_string(n) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw afx::UsageError(path + ":" + std::to_string(n) + ": unknown key " + key);
    if (opt->count() > 0) continue;
    if (opt->get_delimiter() != '\0') {
      std::stringstream parts(value);
      for (std::string v; std::getline(parts, v, opt->get_delimiter());) opt->add_result(trim(v));
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active Flux solver for the 2D Euler equations"};
  app.require_subcommand(1);
  std::string simd_backend;
  app.add_option("--simd", simd_backend, "Kernel backend")->check(CLI::IsMember({"scalar", "avx2"}));

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Run one problem");
  std::string run_config;
  run->add_option("--config", run_config, "key = value file mirroring the flags; flags win");
  run->add_option("--problem", ro.problem, "gaussian, sod, laxliu[ID], kh")->capture_default_str();
  run->add_option("--nx", ro.nx)->check(CLI::Range(3L, 1L << 20))->capture_default_str();
  run->add_option("--ny", ro.ny, "Defaults to nx")->check(CLI::Range(3L, 1L << 20));
  run->add_option("--cfl", ro.cfl)->capture_default_str();
  run->add_option("--t-end", ro.t_end, "Defaults to the problem's end time");
  run->add_option("--limiter", ro.limiter)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  run->add_option("--out", ro.out)->capture_default_str();
  run->add_option("--format", ro.format)->check(CLI::IsMember({"bin", "csv"}))->capture_default_str();
  run->add_option("--data", ro.data, "Lax-Liu data file");
  run->add_option("--laxliu-config", ro.config_id, "Lax-Liu configuration for --problem laxliu")->capture_default_str();
  run->add_option("--mach", ro.mach, "Kelvin-Helmholtz Mach number")->capture_default_str();
  run->add_option("--snapshots", ro.snapshots, "Extra snapshot times")->delimiter(',');
  run->add_option("--progress", ro.progress, "Progress line every N steps (0: off)");

  ConvergenceOptions co;
  auto* conv = app.add_subcommand("convergence", "Grid refinement study; the finest grid is the reference");
  std::string conv_config;
  conv->add_option("--config", conv_config, "key = value file mirroring the flags; flags win");
  conv->add_option("--problem", co.problem)->capture_default_str();
  conv->add_option("--grids", co.grids)->delimiter(',')->capture_default_str();
  conv->add_option("--t-end", co.t_end)->capture_default_str();
  conv->add_option("--cfl", co.cfl)->capture_default_str();
  conv->add_option("--limiter", co.limiter)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  conv->add_option("--out", co.out)->capture_default_str();
  conv->add_option("--progress", co.progress);

  std::string coarse, reference;
  auto* norms = app.add_subcommand("norms", "L1 point-value error of a snapshot against a finer one");
  norms->add_option("--coarse", coarse)->required();
  norms->add_option("--reference", reference)->required();

  ExtractOptions eo;
  auto* extract = app.add_subcommand("extract", "Radial scatter or line cut from a snapshot");
  extract->add_option("--snapshot", eo.snapshot, ".afx file or CSV <stem>_meta.txt")->required();
  extract->add_option("--mode", eo.mode)->check(CLI::IsMember({"radial", "line"}))->capture_default_str();
  extract->add_option("--at", eo.at, "Line coordinate");
  extract->add_option("--axis", eo.axis, "x: the line x = at; y: the line y = at")
      ->check(CLI::IsMember({"x", "y"}))
      ->capture_default_str();
  extract->add_option("--center", eo.center, "Radial center cx,cy")->delimiter(',')->expected(2);
  extract->add_option("--output", eo.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    apply_config_file(run, run_config);
    apply_config_file(conv, conv_config);
  } catch (const CLI::Error& e) {
    std::cerr << "config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simd_backend == "scalar") afx::simd::set_backend(afx::simd::Backend::Scalar);
    if (simd_backend == "avx2") afx::simd::set_backend(afx::simd::Backend::Avx2);
    if (run->parsed()) return cmd_run(ro);
    if (conv->parsed()) return cmd_convergence(co);
    if (norms->parsed()) return cmd_norms(coarse, reference);
    if (extract->parsed()) return cmd_extract(eo);
  } catch (const afx::DomainError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const afx::StepLimitError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
