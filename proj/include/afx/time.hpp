#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "afx/average.hpp"
#include "afx/fd.hpp"
#include "afx/grid.hpp"

namespace afx {

struct ProblemConfig;

struct RunParams {
  double cfl = 0.2;
  double t_end = 0.0;
  bool limiter_on = true;
  long max_steps = 10'000'000;
  std::vector<double> snapshot_times;
  // Progress line to the progress stream every this many steps; 0 disables.
  long progress_every = 0;

  // Throws ConfigError unless 0 < cfl <= 0.41, t_end >= 0, max_steps > 0 and
  // snapshot times lie in [0, t_end].
  void validate() const;
};

// The run hit max_steps before t_end.
class StepLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// cfl * min over physical dofs of min(dx / sx, dy / sy).
[[nodiscard]] double compute_dt(const DofField& field, const GridSpec& spec, double cfl, const GasParams& gas);

// dt shortened so that t + dt does not pass `stop`; lands exactly on it.
[[nodiscard]] double clip_dt(double t, double dt, double stop);

// Stage k of SSP-RK3: u_k = u + b_k ((u_{k-1} - u) + dt L(u_{k-1})), u_0 = u.
inline constexpr std::array<double, 3> kRk3Weights{1.0, 0.25, 2.0 / 3.0};

// Right-hand side of the semi-discrete system for all three dof families.
struct Rhs {
  StateArray averages;
  PointRhs points;
};

// Owns the scratch buffers for repeated stepping on one grid.
class Stepper {
 public:
  Stepper(const GridSpec& spec, const GasParams& gas);

  // L(field); fills ghosts of `field` first.
  void rhs(DofField& field, bool limiter_on, Rhs& out);

  // One SSP-RK3 step in place.
  void rk3_step(DofField& field, double dt, bool limiter_on);

  [[nodiscard]] const LimiterStats& limiter_stats() const { return stats_; }
  [[nodiscard]] const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  GasParams gas_;
  DofField stage_;
  DofField next_;
  Rhs rhs_;
  PointDerivatives deriv_;
  AverageWork avg_work_;
  LimiterStats stats_;
};

struct FieldRange {
  double min_rho = 0.0;
  double max_rho = 0.0;
  double min_p = 0.0;
  double max_p = 0.0;
};

// Extremes of density and pressure over all physical dofs. Throws
// DomainError, with the location, on a non-finite value.
[[nodiscard]] FieldRange field_range(const DofField& field, const GridSpec& spec, const GasParams& gas);

struct RunDiagnostics {
  long steps = 0;
  double time = 0.0;
  FieldRange initial{};
  FieldRange final{};
  // Extremes over every step of the run.
  FieldRange overall{};
  LimiterStats limiter{};
  double wall_seconds = 0.0;
};

using SnapshotSink = std::function<void(const DofField& field, const GridSpec& spec, double t)>;

// Initializes the dofs from the problem, advances to params.t_end and calls
// `sink` at every snapshot time (t = 0 and t_end included when listed).
// Returns the final field through `field`.
RunDiagnostics run(const ProblemConfig& problem, const GridSpec& spec, const RunParams& params,
                   const SnapshotSink& sink, DofField& field, std::ostream* progress = nullptr);

}  // namespace afx
