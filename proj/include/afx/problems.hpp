#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "afx/grid.hpp"
#include "afx/state.hpp"

namespace afx {

enum class ProblemKind { GaussianPulse, SodRadial, LaxLiu, KelvinHelmholtz };

// Quadrant order: 1 = NE, 2 = NW, 3 = SW, 4 = SE (stored at index q - 1).
using QuadrantStates = std::array<PrimitiveState, 4>;

struct LaxLiuTable {
  std::map<int, QuadrantStates> configs;
};

// Parses `config_id quadrant rho u v p` lines; '#' starts a comment. Throws
// ConfigError on malformed lines, duplicates, invalid states or configs with
// missing quadrants.
[[nodiscard]] LaxLiuTable parse_laxliu(std::string_view text);
[[nodiscard]] LaxLiuTable load_laxliu(const std::filesystem::path& path);
[[nodiscard]] std::filesystem::path default_laxliu_path();

// FNV-1a 64-bit hash of the raw bytes.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

[[nodiscard]] PrimitiveState gaussian_ic(double x, double y);
[[nodiscard]] PrimitiveState sod_ic(double x, double y);
[[nodiscard]] PrimitiveState kh_ic(double x, double y, double mach, const GasParams& gas);
// Throws ConfigError for a config absent from the table.
[[nodiscard]] PrimitiveState laxliu_ic(const LaxLiuTable& table, int config_id, double x, double y);

struct ProblemConfig {
  ProblemKind kind = ProblemKind::GaussianPulse;
  std::string name;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  BoundaryCondition bc{};
  double t_end = 0.0;
  GasParams gas{};
  // Lax-Liu only.
  int config_id = 0;
  QuadrantStates quadrants{};
  double center_x = 0.5, center_y = 0.5;
  // Kelvin-Helmholtz only.
  double mach = 0.05;

  [[nodiscard]] PrimitiveState initial(double x, double y) const;
};

[[nodiscard]] ProblemConfig gaussian_problem();
[[nodiscard]] ProblemConfig sod_problem();
[[nodiscard]] ProblemConfig laxliu_problem(const LaxLiuTable& table, int config_id);
[[nodiscard]] ProblemConfig kh_problem(double mach = 0.05);

struct ProblemOptions {
  int config_id = 12;
  double mach = 0.05;
  std::filesystem::path laxliu_data;  // empty: default_laxliu_path()
};

// Names: gaussian, sod, laxliu (or laxliu6, laxliu11, ...), kh.
[[nodiscard]] ProblemConfig problem_by_name(std::string_view name, const ProblemOptions& opts = {});

// nx x ny cells over the problem's domain with its boundary conditions.
[[nodiscard]] GridSpec make_grid(const ProblemConfig& problem, long nx, long ny);

// Point values sample the initial condition; averages use 5x5 Gauss-Legendre
// quadrature per cell. Ghosts are left for fill_ghosts.
void initialize(DofField& field, const GridSpec& spec, const ProblemConfig& problem);

}  // namespace afx
