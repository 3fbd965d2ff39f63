#include "afx/time.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "afx/problems.hpp"
#include "afx/simd.hpp"

namespace afx {
namespace {

std::size_t doubles_in(const StateArray& a) { return a.raw().size() * 4; }

double* data_of(StateArray& a) { return a.raw().data()->c.data(); }
const double* data_of(const StateArray& a) { return a.raw().data()->c.data(); }

void combine(StateArray& out, const StateArray& base, const StateArray& stage, const StateArray& rhs, double b,
             double dt) {
  simd::kernels().stage_combine(data_of(out), data_of(base), data_of(stage), data_of(rhs), b, dt,
                                doubles_in(out));
}

void combine(DofField& out, const DofField& base, const DofField& stage, const Rhs& rhs, double b, double dt) {
  combine(out.averages, base.averages, stage.averages, rhs.averages, b, dt);
  combine(out.nodes, base.nodes, stage.nodes, rhs.points.nodes, b, dt);
  combine(out.xedges, base.xedges, stage.xedges, rhs.points.xedges, b, dt);
  combine(out.yedges, base.yedges, stage.yedges, rhs.points.yedges, b, dt);
}

template <typename F>
void for_each_dof(const DofField& f, const GridSpec& spec, F&& fn) {
  for (long j = 0; j < spec.ny; ++j)
    for (long i = 0; i < spec.nx; ++i) fn(f.averages(i, j), "average", i, j);
  for (long j = 0; j <= spec.ny; ++j)
    for (long i = 0; i <= spec.nx; ++i) fn(f.nodes(i, j), "node", i, j);
  for (long j = 0; j < spec.ny; ++j)
    for (long i = 0; i <= spec.nx; ++i) fn(f.xedges(i, j), "xedge", i, j);
  for (long j = 0; j <= spec.ny; ++j)
    for (long i = 0; i < spec.nx; ++i) fn(f.yedges(i, j), "yedge", i, j);
}

std::string where(const char* family, long i, long j) {
  return std::string(family) + " (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void merge(FieldRange& into, const FieldRange& r) {
  into.min_rho = std::min(into.min_rho, r.min_rho);
  into.max_rho = std::max(into.max_rho, r.max_rho);
  into.min_p = std::min(into.min_p, r.min_p);
  into.max_p = std::max(into.max_p, r.max_p);
}

}  // namespace

void RunParams::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.41)) throw ConfigError("cfl must lie in (0, 0.41], got " + std::to_string(cfl));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be finite and >= 0");
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= t_end)) throw ConfigError("snapshot time " + std::to_string(t) + " outside [0, t_end]");
  }
}

double compute_dt(const DofField& field, const GridSpec& spec, double cfl, const GasParams& gas) {
  double inv = 0.0;
  for_each_dof(field, spec, [&](const ConservedState& q, const char* family, long i, long j) {
    WaveSpeeds s;
    try {
      s = max_wave_speeds(q, gas);
    } catch (const DomainError& e) {
      throw e.with_location(where(family, i, j));
    }
    if (!std::isfinite(s.sx) || !std::isfinite(s.sy)) throw DomainError("non-finite wave speed", q, where(family, i, j));
    inv = std::max({inv, s.sx / spec.dx, s.sy / spec.dy});
  });
  return cfl / inv;
}

double clip_dt(double t, double dt, double stop) { return t + dt >= stop ? stop - t : dt; }

FieldRange field_range(const DofField& field, const GridSpec& spec, const GasParams& gas) {
  FieldRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for_each_dof(field, spec, [&](const ConservedState& q, const char* family, long i, long j) {
    if (!is_finite(q)) throw DomainError("non-finite state", q, where(family, i, j));
    const double p = (gas.gamma - 1.0) * (q.e() - 0.5 * (q.rhou() * q.rhou() + q.rhov() * q.rhov()) / q.rho());
    r.min_rho = std::min(r.min_rho, q.rho());
    r.max_rho = std::max(r.max_rho, q.rho());
    r.min_p = std::min(r.min_p, p);
    r.max_p = std::max(r.max_p, p);
  });
  return r;
}

Stepper::Stepper(const GridSpec& spec, const GasParams& gas)
    : spec_(spec),
      gas_(gas),
      stage_(allocate(spec)),
      next_(allocate(spec)),
      rhs_{StateArray(spec.nx, spec.ny), allocate_point_rhs(spec)},
      deriv_(allocate_derivatives(spec)),
      avg_work_(allocate_average_work(spec)) {}

void Stepper::rhs(DofField& field, bool limiter_on, Rhs& out) {
  fill_ghosts(field, spec_);
  average_rhs(field, spec_, gas_, avg_work_, out.averages);
  point_rhs(field, spec_, limiter_on, gas_, deriv_, out.points, &stats_);
}

void Stepper::rk3_step(DofField& u, double dt, bool limiter_on) {
  rhs(u, limiter_on, rhs_);
  combine(stage_, u, u, rhs_, kRk3Weights[0], dt);
  rhs(stage_, limiter_on, rhs_);
  combine(next_, u, stage_, rhs_, kRk3Weights[1], dt);
  rhs(next_, limiter_on, rhs_);
  combine(stage_, u, next_, rhs_, kRk3Weights[2], dt);
  std::swap(u, stage_);
  fill_ghosts(u, spec_);
}

RunDiagnostics run(const ProblemConfig& problem, const GridSpec& spec, const RunParams& params,
                   const SnapshotSink& sink, DofField& field, std::ostream* progress) {
  params.validate();
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const GasParams gas = problem.gas;
  field = allocate(spec);
  initialize(field, spec, problem);
  fill_ghosts(field, spec);

  std::vector<double> stops = params.snapshot_times;
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  auto next_stop = stops.begin();

  RunDiagnostics d;
  d.initial = field_range(field, spec, gas);
  d.overall = d.initial;
  Stepper stepper(spec, gas);
  double t = 0.0;
  while (next_stop != stops.end() && *next_stop <= 0.0) {
    if (sink) sink(field, spec, 0.0);
    ++next_stop;
  }
  while (t < params.t_end) {
    if (d.steps >= params.max_steps) {
      throw StepLimitError("max_steps (" + std::to_string(params.max_steps) + ") reached at t = " + std::to_string(t));
    }
    const double stop = next_stop != stops.end() ? std::min(*next_stop, params.t_end) : params.t_end;
    const double raw_dt = compute_dt(field, spec, params.cfl, gas);
    const bool lands = t + raw_dt >= stop;
    const double dt = clip_dt(t, raw_dt, stop);
    try {
      stepper.rk3_step(field, dt, params.limiter_on);
    } catch (const DomainError& e) {
      throw e.with_location("step " + std::to_string(d.steps + 1) + " t=" + std::to_string(t));
    }
    t = lands ? stop : t + dt;
    ++d.steps;
    const FieldRange r = field_range(field, spec, gas);
    merge(d.overall, r);
    if (progress != nullptr && params.progress_every > 0 && d.steps % params.progress_every == 0) {
      *progress << "step " << d.steps << " t=" << t << " dt=" << dt << " min_rho=" << r.min_rho
                << " min_p=" << r.min_p << '\n';
    }
    while (next_stop != stops.end() && *next_stop <= t) {
      if (sink) sink(field, spec, t);
      ++next_stop;
    }
  }
  d.time = t;
  d.final = field_range(field, spec, gas);
  d.limiter = stepper.limiter_stats();
  d.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

}  // namespace afx
