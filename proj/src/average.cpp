#include "afx/average.hpp"

#include <string>

#include "afx/simd.hpp"

namespace afx {
namespace {

std::string where(const char* family, long i, long j) {
  return std::string(family) + " (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

void evaluate_flux(const StateArray& points, long ni, long nj, const GasParams& gas, FluxFn fn,
                   StateArray& out, const char* family) {
  for (long j = 0; j < nj; ++j)
    for (long i = 0; i < ni; ++i) {
      try {
        out(i, j) = fn(points(i, j), gas);
      } catch (const DomainError& e) {
        throw e.with_location(where(family, i, j));
      }
    }
}

void simpson_x(const StateArray& node_f, const StateArray& mid_f, long nx, long ny, StateArray& out) {
  const auto& k = simd::kernels();
  for (long j = 0; j < ny; ++j) {
    const simd::RowTerm t[3] = {{&node_f(0, j), 1.0}, {&mid_f(0, j), 4.0}, {&node_f(0, j + 1), 1.0}};
    k.weighted_rows(&out(0, j), t, 3, SimpsonWeights::end, static_cast<std::size_t>(nx + 1));
  }
}

void simpson_y(const StateArray& node_f, const StateArray& mid_f, long nx, long ny, StateArray& out) {
  const auto& k = simd::kernels();
  for (long J = 0; J <= ny; ++J) {
    const simd::RowTerm t[3] = {{&node_f(0, J), 1.0}, {&mid_f(0, J), 4.0}, {&node_f(1, J), 1.0}};
    k.weighted_rows(&out(0, J), t, 3, SimpsonWeights::end, static_cast<std::size_t>(nx));
  }
}

}  // namespace

StateArray interface_flux_x(const DofField& f, const GridSpec& spec, const GasParams& gas, FluxFn fx) {
  StateArray node_f(spec.nx + 1, spec.ny + 1);
  StateArray mid_f(spec.nx + 1, spec.ny);
  StateArray out(spec.nx + 1, spec.ny);
  evaluate_flux(f.nodes, spec.nx + 1, spec.ny + 1, gas, fx, node_f, "node");
  evaluate_flux(f.xedges, spec.nx + 1, spec.ny, gas, fx, mid_f, "xedge");
  simpson_x(node_f, mid_f, spec.nx, spec.ny, out);
  return out;
}

StateArray interface_flux_y(const DofField& f, const GridSpec& spec, const GasParams& gas, FluxFn fy) {
  StateArray node_f(spec.nx + 1, spec.ny + 1);
  StateArray mid_f(spec.nx, spec.ny + 1);
  StateArray out(spec.nx, spec.ny + 1);
  evaluate_flux(f.nodes, spec.nx + 1, spec.ny + 1, gas, fy, node_f, "node");
  evaluate_flux(f.yedges, spec.nx, spec.ny + 1, gas, fy, mid_f, "yedge");
  simpson_y(node_f, mid_f, spec.nx, spec.ny, out);
  return out;
}

AverageWork allocate_average_work(const GridSpec& spec) {
  const long nx = spec.nx;
  const long ny = spec.ny;
  return {StateArray(nx + 1, ny + 1), StateArray(nx + 1, ny + 1), StateArray(nx + 1, ny),
          StateArray(nx, ny + 1),     StateArray(nx + 1, ny),     StateArray(nx, ny + 1)};
}

void average_rhs(const DofField& f, const GridSpec& spec, const GasParams& gas, AverageWork& w,
                 StateArray& out) {
  const long nx = spec.nx;
  const long ny = spec.ny;
  evaluate_flux(f.nodes, nx + 1, ny + 1, gas, &flux_x, w.node_fx, "node");
  evaluate_flux(f.nodes, nx + 1, ny + 1, gas, &flux_y, w.node_fy, "node");
  evaluate_flux(f.xedges, nx + 1, ny, gas, &flux_x, w.xedge_fx, "xedge");
  evaluate_flux(f.yedges, nx, ny + 1, gas, &flux_y, w.yedge_fy, "yedge");
  simpson_x(w.node_fx, w.xedge_fx, nx, ny, w.face_x);
  simpson_y(w.node_fy, w.yedge_fy, nx, ny, w.face_y);

  const double rdx = 1.0 / spec.dx;
  const double rdy = 1.0 / spec.dy;
  const auto& k = simd::kernels();
  for (long j = 0; j < ny; ++j) {
    const simd::RowTerm t[4] = {{&w.face_x(1, j), -rdx},
                                {&w.face_x(0, j), rdx},
                                {&w.face_y(0, j + 1), -rdy},
                                {&w.face_y(0, j), rdy}};
    k.weighted_rows(&out(0, j), t, 4, 1.0, static_cast<std::size_t>(nx));
  }
}

}  // namespace afx
