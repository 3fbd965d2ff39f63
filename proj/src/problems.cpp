#include "afx/problems.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "afx/errors.hpp"

#ifndef AFX_DATA_DIR
#define AFX_DATA_DIR "data"
#endif

namespace afx {
namespace {

constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

bool valid(const PrimitiveState& w) { return w.rho > 0.0 && w.p > 0.0 && std::isfinite(w.u) && std::isfinite(w.v); }

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LaxLiuTable parse_laxliu(std::string_view text) {
  LaxLiuTable table;
  std::map<int, std::array<bool, 4>> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int id = 0;
    int quadrant = 0;
    PrimitiveState w{};
    if (!(ls >> id)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError("laxliu data line " + std::to_string(lineno) + ": expected config id");
    }
    std::string rest;
    if (!(ls >> quadrant >> w.rho >> w.u >> w.v >> w.p) || (ls >> rest)) {
      throw ConfigError("laxliu data line " + std::to_string(lineno) + ": expected `config quadrant rho u v p`");
    }
    if (quadrant < 1 || quadrant > 4) {
      throw ConfigError("laxliu data line " + std::to_string(lineno) + ": quadrant must be 1..4");
    }
    if (!valid(w)) throw ConfigError("laxliu data line " + std::to_string(lineno) + ": invalid state");
    auto& flags = seen[id];
    if (flags[static_cast<std::size_t>(quadrant - 1)]) {
      throw ConfigError("laxliu data line " + std::to_string(lineno) + ": duplicate quadrant");
    }
    flags[static_cast<std::size_t>(quadrant - 1)] = true;
    table.configs[id][static_cast<std::size_t>(quadrant - 1)] = w;
  }
  for (const auto& [id, flags] : seen) {
    for (bool f : flags) {
      if (!f) throw ConfigError("laxliu config " + std::to_string(id) + " is missing a quadrant");
    }
  }
  return table;
}

LaxLiuTable load_laxliu(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open laxliu data file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_laxliu(ss.str());
}

std::filesystem::path default_laxliu_path() {
  if (const char* env = std::getenv("AFX_LAXLIU_DATA")) return env;
  return std::filesystem::path(AFX_DATA_DIR) / "laxliu.dat";
}

PrimitiveState gaussian_ic(double x, double y) {
  const double bump = 1.0 + 0.5 * std::exp(-80.0 * (x * x + y * y));
  return {bump, 0.0, 0.0, bump};
}

PrimitiveState sod_ic(double x, double y) {
  const double r = std::hypot(x - 0.5, y - 0.5);
  return r < 0.3 ? PrimitiveState{1.0, 0.0, 0.0, 1.0} : PrimitiveState{0.125, 0.0, 0.0, 0.1};
}

PrimitiveState kh_ic(double x, double y, double mach, const GasParams& gas) {
  if (!(mach > 0.0)) throw ConfigError("Kelvin-Helmholtz Mach number must be positive");
  const double psi = 1.0 + std::cos(std::numbers::pi * mach * x);
  const double phi = y < 4.0 ? 2.0 * mach * y : 2.0 * mach * (y - 4.0) - 0.4;
  return {1.0 + mach / 5.0 * psi + phi, std::sqrt(gas.gamma) * psi, 0.0,
          1.0 / (mach * mach) + gas.gamma / mach * psi};
}

PrimitiveState laxliu_ic(const LaxLiuTable& table, int config_id, double x, double y) {
  const auto it = table.configs.find(config_id);
  if (it == table.configs.end()) throw ConfigError("laxliu config " + std::to_string(config_id) + " not in data file");
  const bool east = x >= 0.5;
  const bool north = y >= 0.5;
  const int quadrant = north ? (east ? 1 : 2) : (east ? 4 : 3);
  return it->second[static_cast<std::size_t>(quadrant - 1)];
}

PrimitiveState ProblemConfig::initial(double x, double y) const {
  switch (kind) {
    case ProblemKind::GaussianPulse: return gaussian_ic(x, y);
    case ProblemKind::SodRadial: return sod_ic(x, y);
    case ProblemKind::KelvinHelmholtz: return kh_ic(x, y, mach, gas);
    case ProblemKind::LaxLiu: {
      const bool east = x >= center_x;
      const bool north = y >= center_y;
      const int quadrant = north ? (east ? 1 : 2) : (east ? 4 : 3);
      return quadrants[static_cast<std::size_t>(quadrant - 1)];
    }
  }
  return {};
}

ProblemConfig gaussian_problem() {
  ProblemConfig p;
  p.kind = ProblemKind::GaussianPulse;
  p.name = "gaussian";
  p.x_min = -0.5;
  p.x_max = 0.5;
  p.y_min = -0.5;
  p.y_max = 0.5;
  p.bc = BoundaryCondition::uniform(BcKind::Periodic);
  p.t_end = 0.05;
  return p;
}

ProblemConfig sod_problem() {
  ProblemConfig p;
  p.kind = ProblemKind::SodRadial;
  p.name = "sod";
  p.bc = BoundaryCondition::uniform(BcKind::Extrapolate);
  p.t_end = 0.2;
  return p;
}

ProblemConfig laxliu_problem(const LaxLiuTable& table, int config_id) {
  const auto it = table.configs.find(config_id);
  if (it == table.configs.end()) throw ConfigError("laxliu config " + std::to_string(config_id) + " not in data file");
  ProblemConfig p;
  p.kind = ProblemKind::LaxLiu;
  p.name = "laxliu" + std::to_string(config_id);
  p.config_id = config_id;
  p.quadrants = it->second;
  p.x_min = -0.25;
  p.x_max = 1.25;
  p.y_min = -0.25;
  p.y_max = 1.25;
  p.bc = BoundaryCondition::uniform(BcKind::Extrapolate);
  switch (config_id) {
    case 6: p.t_end = 0.3; break;
    case 11: p.t_end = 0.3; break;
    case 12: p.t_end = 0.25; break;
    case 16: p.t_end = 0.2; break;
    default: p.t_end = 0.25; break;
  }
  return p;
}

ProblemConfig kh_problem(double mach) {
  if (!(mach > 0.0)) throw ConfigError("Kelvin-Helmholtz Mach number must be positive");
  ProblemConfig p;
  p.kind = ProblemKind::KelvinHelmholtz;
  p.name = "kh";
  p.mach = mach;
  p.x_min = 0.0;
  p.x_max = 2.0 / mach;
  p.y_min = 0.0;
  p.y_max = 8.0;
  p.bc = {BcKind::Periodic, BcKind::Extrapolate};
  p.t_end = 3.0;
  return p;
}

ProblemConfig problem_by_name(std::string_view name, const ProblemOptions& opts) {
  if (name == "gaussian") return gaussian_problem();
  if (name == "sod") return sod_problem();
  if (name == "kh") return kh_problem(opts.mach);
  if (name.starts_with("laxliu")) {
    int id = opts.config_id;
    if (name.size() > 6) {
      try {
        std::size_t used = 0;
        id = std::stoi(std::string(name.substr(6)), &used);
        if (used != name.size() - 6) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("bad laxliu problem name: " + std::string(name));
      }
    }
    const auto path = opts.laxliu_data.empty() ? default_laxliu_path() : opts.laxliu_data;
    return laxliu_problem(load_laxliu(path), id);
  }
  throw ConfigError("unknown problem: " + std::string(name));
}

GridSpec make_grid(const ProblemConfig& problem, long nx, long ny) {
  GridSpec s;
  s.nx = nx;
  s.ny = ny;
  s.x0 = problem.x_min;
  s.y0 = problem.y_min;
  s.dx = (problem.x_max - problem.x_min) / static_cast<double>(nx);
  s.dy = (problem.y_max - problem.y_min) / static_cast<double>(ny);
  s.bc = problem.bc;
  s.validate();
  return s;
}

void initialize(DofField& field, const GridSpec& spec, const ProblemConfig& problem) {
  const GasParams& gas = problem.gas;
  auto at = [&](double x, double y) { return to_conserved(problem.initial(x, y), gas); };
  for (long J = 0; J <= spec.ny; ++J)
    for (long I = 0; I <= spec.nx; ++I) field.nodes(I, J) = at(spec.x_face(I), spec.y_face(J));
  for (long j = 0; j < spec.ny; ++j)
    for (long I = 0; I <= spec.nx; ++I) field.xedges(I, j) = at(spec.x_face(I), spec.y_center(j));
  for (long J = 0; J <= spec.ny; ++J)
    for (long i = 0; i < spec.nx; ++i) field.yedges(i, J) = at(spec.x_center(i), spec.y_face(J));
  for (long j = 0; j < spec.ny; ++j) {
    for (long i = 0; i < spec.nx; ++i) {
      ConservedState sum{};
      for (std::size_t b = 0; b < 5; ++b) {
        for (std::size_t a = 0; a < 5; ++a) {
          const double x = spec.x_center(i) + 0.5 * spec.dx * kGaussNodes[a];
          const double y = spec.y_center(j) + 0.5 * spec.dy * kGaussNodes[b];
          sum += (0.25 * kGaussWeights[a] * kGaussWeights[b]) * at(x, y);
        }
      }
      field.averages(i, j) = sum;
    }
  }
}

}  // namespace afx
