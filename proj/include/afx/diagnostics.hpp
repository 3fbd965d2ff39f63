#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "afx/euler.hpp"
#include "afx/grid.hpp"
#include "afx/time.hpp"

namespace afx {

inline constexpr std::uint32_t kSnapshotVersion = 1;
// magic, version, nx, ny, dx, dy, x0, y0, time, gamma, limiter flag
inline constexpr std::size_t kSnapshotHeaderBytes = 4 + 4 + 8 + 8 + 6 * 8 + 8;

struct Snapshot {
  GridSpec spec{};
  double time = 0.0;
  double gamma = 1.4;
  bool limiter_on = false;
  DofField field;  // physical values; ghosts are not stored
};

[[nodiscard]] Snapshot make_snapshot(const DofField& field, const GridSpec& spec, double time, double gamma,
                                     bool limiter_on);

// Little-endian binary: header, then averages, nodes, xedges, yedges with i
// fastest. Throws FormatError on bad magic, version or truncation.
void write_snapshot(const std::filesystem::path& path, const Snapshot& s);
[[nodiscard]] Snapshot read_snapshot(const std::filesystem::path& path);

// <stem>_averages.csv, <stem>_nodes.csv, <stem>_xedges.csv, <stem>_yedges.csv
// (header `i,j,x,y,rho,rhou,rhov,e`) plus <stem>_meta.txt with key=value lines.
void write_snapshot_csv(const std::filesystem::path& dir, const std::string& stem, const Snapshot& s);
[[nodiscard]] Snapshot read_snapshot_csv(const std::filesystem::path& dir, const std::string& stem);

// Sum over the coarse point dofs (nodes, xedges, yedges, as stored) of
// |coarse - reference| * dx * dy at the coincident reference location, per
// conserved component. The reference must cover the same domain with a
// power-of-two refinement; otherwise UsageError.
[[nodiscard]] std::array<double, 4> l1_point_error(const Snapshot& coarse, const Snapshot& reference);

struct ErrorReport {
  std::vector<long> grid_sizes;                // nx per level
  std::vector<std::array<double, 4>> l1;       // per level
  std::vector<std::array<double, 4>> orders;   // between consecutive levels
};

// Fills `orders` as log2(E_k / E_{k+1}) assuming each level halves the spacing.
void compute_orders(ErrorReport& report);

[[nodiscard]] std::string report_json(const ErrorReport& report);

struct ConvergenceResult {
  ErrorReport report;
  std::vector<RunDiagnostics> runs;  // one per grid, reference last
};

// Runs `problem` on n x n grids for every n in `grids`; the largest is the
// reference for the others.
[[nodiscard]] ConvergenceResult convergence_study(const ProblemConfig& problem, std::vector<long> grids,
                                                  const RunParams& params, std::ostream* progress = nullptr);

// (distance from center, rho) for every cell average.
[[nodiscard]] std::vector<std::pair<double, double>> radial_scatter(const Snapshot& s, double cx, double cy);

struct LineCut {
  Axis fixed = Axis::X;      // X: the line x = coordinate, parametrized by y
  double coordinate = 0.0;   // the dof column/row actually used
  std::vector<std::pair<double, ConservedState>> samples;
};

// Point values along the dof column (fixed = X) or row (fixed = Y) nearest to
// `at`. Columns exist at cell faces (nodes and xedges) and cell centers (yedges).
[[nodiscard]] LineCut line_cut(const Snapshot& s, Axis fixed, double at);

}  // namespace afx
