// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here; `--only N` runs a single criterion (ctest registers each one).
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afx/average.hpp"
#include "afx/diagnostics.hpp"
#include "afx/euler.hpp"
#include "afx/fd.hpp"
#include "afx/problems.hpp"
#include "afx/reconstruction.hpp"
#include "afx/time.hpp"
#include "support/oracles.hpp"
#include "support/polynomials.hpp"

using namespace afx;
using afx::testing::Biquadratic;

namespace {

namespace tol {
constexpr double kMinOrder = 2.7;
constexpr double kStencilRel = 1e-11;
constexpr double kSimpson = 1e-12;
constexpr double kConservationRel = 1e-12;
constexpr double kInterpolation = 1e-12;
constexpr double kAverageRel = 1e-9;
constexpr double kCrossCell = 1e-12;
constexpr double kEdgeMax = 1e-12;
constexpr double kPlateauUniform = 1e-12;
constexpr double kSplitRel = 1e-12;
constexpr double kSpectrumRel = 1e-9;
constexpr double kOvershootFactor = 5.0;
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void info(const std::string& s) { std::printf("INFO  %s\n", s.c_str()); std::fflush(stdout); }

// 1 -------------------------------------------------------------------------

Outcome convergence() {
  RunParams p;
  p.cfl = 0.2;
  p.t_end = 0.05;
  p.limiter_on = false;
  const auto res = convergence_study(gaussian_problem(), {32, 64, 128, 256}, p);
  const auto& r = res.report;
  for (std::size_t l = 0; l < r.l1.size(); ++l) info(fmt("  n=%ld  L1(rho)=%.6e", r.grid_sizes[l], r.l1[l][0]));
  const double o1 = r.orders[0][0], o2 = r.orders[1][0];
  return {o1 >= tol::kMinOrder && o2 >= tol::kMinOrder,
          fmt("density orders 32->64 %.3f, 64->128 %.3f (need >= %.1f on both)", o1, o2, tol::kMinOrder)};
}

// 2 -------------------------------------------------------------------------

// Every dof including ghosts comes from the polynomials, so boundary stencils
// see exact data too.
void fill_exact(DofField& f, const GridSpec& spec, const std::array<Biquadratic, 4>& polys) {
  const auto at = [&](double x, double y) {
    return ConservedState{polys[0].value(x, y), polys[1].value(x, y), polys[2].value(x, y), polys[3].value(x, y)};
  };
  const long g = kGhost;
  for (long j = -g; j < spec.ny + 1 + g; ++j)
    for (long i = -g; i < spec.nx + 1 + g; ++i) {
      if (f.nodes.in_range(i, j)) f.nodes(i, j) = at(spec.x_face(i), spec.y_face(j));
      if (f.xedges.in_range(i, j)) f.xedges(i, j) = at(spec.x_face(i), spec.y_center(j));
      if (f.yedges.in_range(i, j)) f.yedges(i, j) = at(spec.x_center(i), spec.y_face(j));
      if (f.averages.in_range(i, j))
        for (std::size_t k = 0; k < 4; ++k)
          f.averages(i, j)[k] = polys[k].average(spec.x_face(i), spec.x_face(i + 1), spec.y_face(j), spec.y_face(j + 1));
    }
}

Outcome stencil_exactness() {
  std::mt19937_64 rng(2024);
  const GridSpec spec{6, 5, -0.4, 0.3, 0.21, 0.13, BoundaryCondition::uniform(BcKind::Extrapolate)};
  double worst_closed = 0.0, worst_recon = 0.0;
  long checked = 0;
  const auto rel = [](double got, double want, double scale) {
    return std::abs(got - want) / std::max(scale, std::abs(want));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<Biquadratic, 4> polys{Biquadratic::random(rng), Biquadratic::random(rng),
                                           Biquadratic::random(rng), Biquadratic::random(rng)};
    // Derivative magnitude scale of this polynomial set over the grid.
    double scale = 1.0;
    for (const auto& q : polys)
      for (double c : q.c) scale = std::max(scale, std::abs(c));
    DofField f = allocate(spec);
    fill_exact(f, spec, polys);
    auto d = allocate_derivatives(spec);
    closed_form_derivatives(f, spec, d);
    const auto check = [&](const StateArray& a, bool along_x, auto pos) {
      for (long j = 0; j < a.nj(); ++j)
        for (long i = 0; i < a.ni(); ++i) {
          const auto [x, y] = pos(i, j);
          for (std::size_t k = 0; k < 4; ++k) {
            const double want = along_x ? polys[k].d_dx(x, y) : polys[k].d_dy(x, y);
            worst_closed = std::max(worst_closed, rel(a(i, j)[k], want, scale));
            ++checked;
          }
        }
    };
    const auto node = [&](long I, long J) { return std::array{spec.x_face(I), spec.y_face(J)}; };
    const auto xedge = [&](long I, long j) { return std::array{spec.x_face(I), spec.y_center(j)}; };
    const auto yedge = [&](long i, long J) { return std::array{spec.x_center(i), spec.y_face(J)}; };
    check(d.node_dx_plus, true, node);
    check(d.node_dx_minus, true, node);
    check(d.node_dy_plus, false, node);
    check(d.node_dy_minus, false, node);
    check(d.xedge_dx_plus, true, xedge);
    check(d.xedge_dx_minus, true, xedge);
    check(d.xedge_dy, false, xedge);
    check(d.yedge_dy_plus, false, yedge);
    check(d.yedge_dy_minus, false, yedge);
    check(d.yedge_dx, true, yedge);

    // Each cell's unlimited reconstruction, differentiated at its 8 dofs: a
    // shared point gets the one-sided derivative from each side.
    constexpr std::array<EdgeKind, 4> parabolic{EdgeKind::Parabolic, EdgeKind::Parabolic, EdgeKind::Parabolic,
                                                EdgeKind::Parabolic};
    for (long j = 0; j < spec.ny; ++j)
      for (long i = 0; i < spec.nx; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
          const auto r = assemble_pw_biparabolic(cell_boundary_component(f, i, j, k), f.averages(i, j)[k],
                                                 parabolic, spec.dx, spec.dy);
          for (CellPoint p : testing::kPoints) {
            const auto o = cell_point_offset(p);
            const double x = spec.x_center(i) + 0.5 * o[0] * spec.dx;
            const double y = spec.y_center(j) + 0.5 * o[1] * spec.dy;
            worst_recon = std::max(worst_recon, rel(derivative(r, p, Axis::X), polys[k].d_dx(x, y), scale));
            worst_recon = std::max(worst_recon, rel(derivative(r, p, Axis::Y), polys[k].d_dy(x, y), scale));
            checked += 2;
            if (o[0] == 0)
              for (DiffSide s : {DiffSide::Plus, DiffSide::Minus}) {
                worst_recon = std::max(worst_recon, rel(derivative(r, p, Axis::X, s), polys[k].d_dx(x, y), scale));
                ++checked;
              }
            if (o[1] == 0)
              for (DiffSide s : {DiffSide::Plus, DiffSide::Minus}) {
                worst_recon = std::max(worst_recon, rel(derivative(r, p, Axis::Y, s), polys[k].d_dy(x, y), scale));
                ++checked;
              }
          }
        }
  }
  return {worst_closed < tol::kStencilRel && worst_recon < tol::kStencilRel,
          fmt("50 biquadratics, %ld derivatives: max rel error closed-form %.2e, reconstruction %.2e (< %.0e)",
              checked, worst_closed, worst_recon, tol::kStencilRel)};
}

// 3 -------------------------------------------------------------------------

ConservedState linear_flux(const ConservedState& q, const GasParams&) {
  return {2.0 * q[0] - q[1] + 0.5, q[1] + 3.0 * q[2], -q[3], 0.25 * q[0] + q[3] - 1.0};
}

Outcome simpson_exactness() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const GridSpec spec{5, 4, -0.2, 0.3, 0.35, 0.15, BoundaryCondition::uniform(BcKind::Periodic)};
  const GasParams gas{};
  double worst = 0.0;
  // Dense oracle: composite 5-point Gauss, 200 sub-intervals (1000 nodes).
  const auto face_mean = [](const std::function<ConservedState(double)>& f, double a, double b) {
    ConservedState s{};
    const int n = 200;
    const double h = (b - a) / n;
    for (int k = 0; k < n; ++k)
      for (std::size_t p = 0; p < 5; ++p)
        s += (0.5 * testing::kGaussW[p] / n) * f(a + h * (k + 0.5 + 0.5 * testing::kGaussX[p]));
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::array<std::array<double, 6>, 4> c{};
    for (auto& row : c)
      for (auto& v : row) v = d(rng);
    const auto q = [&](double x, double y) {
      ConservedState s;
      for (std::size_t k = 0; k < 4; ++k)
        s[k] = c[k][0] + c[k][1] * x + c[k][2] * y + c[k][3] * x * x + c[k][4] * x * y + c[k][5] * y * y;
      return s;
    };
    DofField f = allocate(spec);
    testing::fill_points(f, spec, q);
    const auto fx = interface_flux_x(f, spec, gas, &linear_flux);
    const auto fy = interface_flux_y(f, spec, gas, &linear_flux);
    for (long j = 0; j < spec.ny; ++j)
      for (long I = 0; I <= spec.nx; ++I) {
        const double x = spec.x_face(I);
        const auto want = face_mean([&](double y) { return linear_flux(q(x, y), gas); }, spec.y_face(j), spec.y_face(j + 1));
        for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(fx(I, j)[k] - want[k]));
      }
    for (long J = 0; J <= spec.ny; ++J)
      for (long i = 0; i < spec.nx; ++i) {
        const double y = spec.y_face(J);
        const auto want = face_mean([&](double x) { return linear_flux(q(x, y), gas); }, spec.x_face(i), spec.x_face(i + 1));
        for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(fy(i, J)[k] - want[k]));
      }
  }
  return {worst <= tol::kSimpson, fmt("max |Simpson - oracle| = %.2e (<= %.0e)", worst, tol::kSimpson)};
}

// 4 -------------------------------------------------------------------------

Outcome conservation() {
  const ProblemConfig problem = gaussian_problem();
  const GridSpec spec = make_grid(problem, 64, 64);
  DofField f = allocate(spec);
  initialize(f, spec, problem);
  fill_ghosts(f, spec);
  const auto totals = [&](const DofField& g) {
    std::array<double, 4> sum{}, mag{};
    for (long j = 0; j < spec.ny; ++j)
      for (long i = 0; i < spec.nx; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
          sum[k] += g.averages(i, j)[k] * spec.dx * spec.dy;
          mag[k] += std::abs(g.averages(i, j)[k]) * spec.dx * spec.dy;
        }
    return std::pair{sum, mag};
  };
  const auto [t0, m0] = totals(f);
  Stepper stepper(spec, problem.gas);
  for (int s = 0; s < 100; ++s) stepper.rk3_step(f, compute_dt(f, spec, 0.2, problem.gas), false);
  const auto [t1, m1] = totals(f);
  // Momentum starts at zero: its drift is measured against the integral of |q|.
  double worst = 0.0;
  std::string parts;
  const char* names[4] = {"mass", "x-momentum", "y-momentum", "energy"};
  for (std::size_t k = 0; k < 4; ++k) {
    const double scale = std::max({std::abs(t0[k]), m0[k], m1[k]});
    const double r = std::abs(t1[k] - t0[k]) / scale;
    worst = std::max(worst, r);
    parts += fmt("%s %.1e ", names[k], r);
  }
  return {worst <= tol::kConservationRel, "100 steps, relative drift: " + parts + fmt("(<= %.0e)", tol::kConservationRel)};
}

// 5 -------------------------------------------------------------------------

Outcome limiter_properties() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long fail_interp = 0, fail_avg = 0, fail_bounds = 0, fail_cross = 0, fail_edge = 0, fail_uniform = 0;
  long inside = 0, plateaus = 0, hats = 0, monotone_edges = 0;
  double worst_interp = 0.0, worst_avg = 0.0, worst_cross = 0.0;
  const int sets = 10000;
  const auto t_start = std::chrono::steady_clock::now();
  for (int s = 0; s < sets; ++s) {
    const double center = -5.0 + 10.0 * unit(rng);
    const double spread = std::pow(10.0, -3.0 + 4.0 * unit(rng));
    const auto v = testing::random_values(rng, center - spread, center + spread);
    const Bounds b = point_bounds(v);
    const double width = b.M - b.m;
    // A fifth of the averages fall outside [m, M].
    const double qbar = b.m - 0.125 * width + 1.25 * width * unit(rng);
    const double mag = std::max({std::abs(b.m), std::abs(b.M), std::abs(qbar)});
    const auto r = reconstruct_cell(v, qbar, 1.0, 1.0);
    if (r.is_plateau()) ++plateaus;
    else if (!r.unlimited()) ++hats;

    // (a) interpolation of the 8 boundary values
    for (CellPoint p : testing::kPoints) {
      const auto [x, y] = testing::ref_location(p);
      const double e = std::abs(evaluate_reference(r, x, y) - v[p]) / mag;
      worst_interp = std::max(worst_interp, e);
      if (e > tol::kInterpolation) ++fail_interp;
    }
    // (b) average by exact quadrature
    const double ea = std::abs(testing::reconstruction_average(r) - qbar) / mag;
    worst_avg = std::max(worst_avg, ea);
    if (ea > tol::kAverageRel) ++fail_avg;
    // (c) bounds over the sample set when m < qbar < M
    if (b.m < qbar && qbar < b.M) {
      ++inside;
      const double t = max_principle_tolerance(b.m, b.M);
      for (const auto& [x, y] : max_principle_samples(r)) {
        const double q = evaluate_reference(r, x, y);
        if (q < b.m - t || q > b.M + t) {
          ++fail_bounds;
          break;
        }
      }
    }
    // (d) a neighbour sharing the east edge agrees along it
    auto w = testing::random_values(rng, center - spread, center + spread);
    w[CellPoint::SW] = v[CellPoint::SE];
    w[CellPoint::W] = v[CellPoint::E];
    w[CellPoint::NW] = v[CellPoint::NE];
    const Bounds bw = point_bounds(w);
    const auto rw = reconstruct_cell(w, bw.m + (bw.M - bw.m) * unit(rng), 1.0, 1.0);
    for (int k = 0; k <= 32; ++k) {
      const double y = -0.5 + k / 32.0;
      const double e = std::abs(evaluate_reference(r, 0.5, y) - evaluate_reference(rw, -0.5, y)) / mag;
      worst_cross = std::max(worst_cross, e);
      if (e > tol::kCrossCell) {
        ++fail_cross;
        break;
      }
    }
    // (e) strictly monotone edges stay between their end values
    const std::array<std::array<CellPoint, 3>, 4> edges{{{CellPoint::SW, CellPoint::W, CellPoint::NW},
                                                         {CellPoint::SE, CellPoint::E, CellPoint::NE},
                                                         {CellPoint::SW, CellPoint::S, CellPoint::SE},
                                                         {CellPoint::NW, CellPoint::N, CellPoint::NE}}};
    for (std::size_t e = 0; e < 4; ++e) {
      const double a = v[edges[e][0]], c = v[edges[e][1]], z = v[edges[e][2]];
      if (!((a < c && c < z) || (a > c && c > z))) continue;
      ++monotone_edges;
      const double lo = std::min(a, z), hi = std::max(a, z);
      for (int k = 0; k <= 32; ++k) {
        const double t = -0.5 + k / 32.0;
        const double x = e == 0 ? -0.5 : e == 1 ? 0.5 : t;
        const double y = e == 2 ? -0.5 : e == 3 ? 0.5 : t;
        const double q = evaluate_reference(r, x, y);
        if (q < lo - tol::kEdgeMax * mag || q > hi + tol::kEdgeMax * mag) {
          ++fail_edge;
          break;
        }
      }
    }
    // (f) uniform boundary data, all edges parabolic: q_p = qbar for any eta
    CellValues<double> u;
    u.v.fill(center);
    const double eta = 0.5 * unit(rng);
    const double qp = plateau_value(u, {}, center, std::max(eta, 1e-3));
    if (std::abs(qp - center) > tol::kPlateauUniform * std::max(1.0, std::abs(center))) ++fail_uniform;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  info(fmt("  %d sets in %.1f s: %ld with m < qbar < M, %ld plateaus, %ld hat-only, %ld monotone edges", sets, secs,
           inside, plateaus, hats, monotone_edges));
  info(fmt("  (a) interpolation: %ld failures, worst %.1e (tol %.0e)", fail_interp, worst_interp, tol::kInterpolation));
  info(fmt("  (b) average: %ld failures, worst %.1e (tol %.0e)", fail_avg, worst_avg, tol::kAverageRel));
  info(fmt("  (c) bounds: %ld failures", fail_bounds));
  info(fmt("  (d) cross-cell: %ld failures, worst %.1e (tol %.0e)", fail_cross, worst_cross, tol::kCrossCell));
  info(fmt("  (e) edge maximum principle: %ld failures", fail_edge));
  info(fmt("  (f) uniform plateau value: %ld failures", fail_uniform));
  const long fails = fail_interp + fail_avg + fail_bounds + fail_cross + fail_edge + fail_uniform;
  return {fails == 0 && plateaus > 0 && hats > 0,
          fmt("%d random sets, %ld property failures (a-f)", sets, fails)};
}

// 6 -------------------------------------------------------------------------

Eigen::Matrix4d to_eigen(const Mat4& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return e;
}

Outcome jacobian_splitting() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GasParams gas{};
  double worst_sum = 0.0, worst_sign = 0.0;
  long bad = 0;
  for (int s = 0; s < 100; ++s) {
    const PrimitiveState w{0.05 + 5.0 * u(rng), -4.0 + 8.0 * u(rng), -4.0 + 8.0 * u(rng), 0.05 + 5.0 * u(rng)};
    const ConservedState q = to_conserved(w, gas);
    for (Axis axis : {Axis::X, Axis::Y}) {
      const auto sp = split_jacobian(q, gas, axis);
      const Eigen::Matrix4d J = to_eigen(jacobian(q, gas, axis));
      const double scale = J.cwiseAbs().maxCoeff();
      const double e = (to_eigen(sp.j_plus) + to_eigen(sp.j_minus) - J).cwiseAbs().maxCoeff() / scale;
      worst_sum = std::max(worst_sum, e);
      if (e > tol::kSplitRel) ++bad;
      for (const auto& [m, sign] : {std::pair{to_eigen(sp.j_plus), 1.0}, std::pair{to_eigen(sp.j_minus), -1.0}}) {
        const Eigen::Vector4cd ev = Eigen::EigenSolver<Eigen::Matrix4d>(m).eigenvalues();
        for (int i = 0; i < 4; ++i) {
          const double wrong = std::max(std::abs(ev(i).imag()), -sign * ev(i).real()) / scale;
          worst_sign = std::max(worst_sign, wrong);
          if (wrong > tol::kSpectrumRel) ++bad;
        }
      }
    }
  }
  return {bad == 0, fmt("100 states x 2 axes: max |J+ + J- - J| / |J| = %.1e (<= %.0e), worst spectrum sign "
                        "violation %.1e (<= %.0e)",
                        worst_sum, tol::kSplitRel, worst_sign, tol::kSpectrumRel)};
}

// 7 -------------------------------------------------------------------------

struct SodRun {
  bool ok = false;
  std::string error;
  RunDiagnostics d;
};

SodRun sod_run(double cfl, bool limiter) {
  const ProblemConfig problem = sod_problem();
  const GridSpec spec = make_grid(problem, 100, 100);
  RunParams p;
  p.cfl = cfl;
  p.t_end = problem.t_end;
  p.limiter_on = limiter;
  SodRun r;
  DofField f;
  try {
    r.d = run(problem, spec, p, nullptr, f);
    r.ok = r.d.overall.min_rho > 0.0 && r.d.overall.min_p > 0.0;
    if (!r.ok) r.error = "non-positive density or pressure";
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::string describe(const SodRun& r, const char* label) {
  if (!r.ok) return fmt("%s failed: %s", label, r.error.c_str());
  return fmt("%s: %ld steps, min rho %.4f, min p %.4f, final max(rho)-1 %.3e, run max(rho)-1 %.3e", label, r.d.steps,
             r.d.overall.min_rho, r.d.overall.min_p, r.d.final.max_rho - 1.0, r.d.overall.max_rho - 1.0);
}

Outcome judge_sod(const SodRun& off, const SodRun& on, double cfl) {
  if (!off.ok || !on.ok) return {false, fmt("cfl %.2f: a run did not finish positive", cfl)};
  const double over_off = off.d.final.max_rho - 1.0;
  const double over_on = std::max(on.d.final.max_rho - 1.0, 0.0);
  const bool pass = over_off > 0.0 && tol::kOvershootFactor * over_on <= over_off;
  return {pass, fmt("cfl %.2f: overshoot limited %.3e vs unlimited %.3e (need %.0fx smaller)", cfl, over_on, over_off,
                    tol::kOvershootFactor)};
}

Outcome sod_overshoot() {
  const SodRun off = sod_run(0.2, false);
  info("  " + describe(off, "cfl 0.20 unlimited"));
  const SodRun on = sod_run(0.2, true);
  info("  " + describe(on, "cfl 0.20 limited"));
  const Outcome main = judge_sod(off, on, 0.2);
  // Informational: the same comparison at cfl 0.05.
  const SodRun off5 = sod_run(0.05, false);
  info("  " + describe(off5, "cfl 0.05 unlimited"));
  const SodRun on5 = sod_run(0.05, true);
  info("  " + describe(on5, "cfl 0.05 limited"));
  const Outcome low = judge_sod(off5, on5, 0.05);
  info(fmt("  at cfl 0.05 (not the criterion): %s -> %s", low.detail.c_str(), low.pass ? "would pass" : "would fail"));
  return main;
}

// 8 -------------------------------------------------------------------------

Outcome smoke_runs() {
  const auto check = [](const ProblemConfig& problem, long nx, long ny, double cfl, double t_end, bool limiter,
                        const char* label, std::string& detail) {
    const GridSpec spec = make_grid(problem, nx, ny);
    RunParams p;
    p.cfl = cfl;
    p.t_end = t_end;
    p.limiter_on = limiter;
    DofField f;
    try {
      const auto d = run(problem, spec, p, nullptr, f);
      const bool ok = d.overall.min_rho > 0.0 && d.overall.min_p > 0.0;
      detail += fmt("%s %ld steps to t=%.3g, min rho %.4f, min p %.4f, %.0f s; ", label, d.steps, d.time,
                    d.overall.min_rho, d.overall.min_p, d.wall_seconds);
      return ok;
    } catch (const std::exception& e) {
      detail += fmt("%s failed: %s; ", label, e.what());
      return false;
    }
  };
  std::string detail;
  const ProblemConfig ll = laxliu_problem(load_laxliu(default_laxliu_path()), 12);
  const bool a = check(ll, 100, 100, 0.05, ll.t_end, true, "Lax-Liu 12 100x100 limited cfl 0.05:", detail);
  const ProblemConfig kh = kh_problem(1.0 / 20.0);
  const bool b = check(kh, 200, 40, 0.15, 3.0, false, "KH 200x40 unlimited cfl 0.15:", detail);
  return {a && b, detail};
}

struct Criterion {
  const char* name;
  Outcome (*fn)();
};

const std::array<Criterion, 8> kCriteria{{
    {"convergence order (Gaussian pulse)", convergence},
    {"stencil exactness", stencil_exactness},
    {"Simpson flux exactness", simpson_exactness},
    {"conservation (periodic, 100 steps)", conservation},
    {"limiter property suite", limiter_properties},
    {"Jacobian splitting", jacobian_splitting},
    {"Sod 2D overshoot suppression (cfl 0.2)", sod_overshoot},
    {"Lax-Liu / Kelvin-Helmholtz smoke runs", smoke_runs},
}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> only;
  bool list = false;
  app.add_option("--only", only, "Run only these criteria (1-8)")->check(CLI::Range(1, 8));
  app.add_flag("--list", list, "List the criteria");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (std::size_t i = 0; i < kCriteria.size(); ++i) std::printf("%zu  %s\n", i + 1, kCriteria[i].name);
    return 0;
  }
  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[i].fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  [%zu] %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, kCriteria[i].name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
