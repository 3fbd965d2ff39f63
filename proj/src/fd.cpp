#include "afx/fd.hpp"

#include <string>

#include "afx/reconstruction.hpp"
#include "afx/simd.hpp"

namespace afx {
namespace {

using simd::RowTerm;

void rows(StateArray& out, long j, long n, std::initializer_list<RowTerm> terms, double scale) {
  simd::kernels().weighted_rows(&out(0, j), terms.begin(), terms.size(), scale, static_cast<std::size_t>(n));
}

const ConservedState* at(const StateArray& a, long i, long j) { return &a(i, j); }

std::string dof_name(const char* family, long i, long j) {
  return std::string(family) + " (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

PointDerivatives allocate_derivatives(const GridSpec& spec) {
  const long nx = spec.nx;
  const long ny = spec.ny;
  return {StateArray(nx + 1, ny + 1), StateArray(nx + 1, ny + 1), StateArray(nx + 1, ny + 1),
          StateArray(nx + 1, ny + 1), StateArray(nx + 1, ny),     StateArray(nx + 1, ny),
          StateArray(nx + 1, ny),     StateArray(nx, ny + 1),     StateArray(nx, ny + 1),
          StateArray(nx, ny + 1)};
}

void closed_form_derivatives(const DofField& f, const GridSpec& spec, PointDerivatives& d) {
  const long nx = spec.nx;
  const long ny = spec.ny;
  const double rdx = 1.0 / spec.dx;
  const double rdy = 1.0 / spec.dy;
  const auto& q = f.averages;
  const auto& n = f.nodes;
  const auto& xe = f.xedges;
  const auto& ye = f.yedges;

  for (long J = 0; J <= ny; ++J) {
    rows(d.node_dx_plus, J, nx + 1, {{at(n, -1, J), 1.0}, {at(ye, -1, J), -4.0}, {at(n, 0, J), 3.0}}, rdx);
    rows(d.node_dx_minus, J, nx + 1, {{at(ye, 0, J), 4.0}, {at(n, 0, J), -3.0}, {at(n, 1, J), -1.0}}, rdx);
    rows(d.node_dy_plus, J, nx + 1, {{at(n, 0, J - 1), 1.0}, {at(xe, 0, J - 1), -4.0}, {at(n, 0, J), 3.0}}, rdy);
    rows(d.node_dy_minus, J, nx + 1, {{at(xe, 0, J), 4.0}, {at(n, 0, J), -3.0}, {at(n, 0, J + 1), -1.0}}, rdy);
  }

  for (long j = 0; j < ny; ++j) {
    // Owner of the plus side is cell (I-1, j), of the minus side cell (I, j).
    rows(d.xedge_dx_plus, j, nx + 1,
         {{at(q, -1, j), -36.0},
          {at(xe, -1, j), 8.0},
          {at(xe, 0, j), 16.0},
          {at(ye, -1, j), 4.0},
          {at(ye, -1, j + 1), 4.0},
          {at(n, -1, j), 1.0},
          {at(n, 0, j), 1.0},
          {at(n, -1, j + 1), 1.0},
          {at(n, 0, j + 1), 1.0}},
         0.25 * rdx);
    rows(d.xedge_dx_minus, j, nx + 1,
         {{at(q, 0, j), 36.0},
          {at(xe, 0, j), -16.0},
          {at(xe, 1, j), -8.0},
          {at(ye, 0, j), -4.0},
          {at(ye, 0, j + 1), -4.0},
          {at(n, 0, j), -1.0},
          {at(n, 1, j), -1.0},
          {at(n, 0, j + 1), -1.0},
          {at(n, 1, j + 1), -1.0}},
         0.25 * rdx);
    rows(d.xedge_dy, j, nx + 1, {{at(n, 0, j + 1), 1.0}, {at(n, 0, j), -1.0}}, rdy);
  }

  for (long J = 0; J <= ny; ++J) {
    // Owner of the plus side is cell (i, J-1), of the minus side cell (i, J).
    rows(d.yedge_dy_plus, J, nx,
         {{at(q, 0, J - 1), -36.0},
          {at(ye, 0, J - 1), 8.0},
          {at(ye, 0, J), 16.0},
          {at(xe, 0, J - 1), 4.0},
          {at(xe, 1, J - 1), 4.0},
          {at(n, 0, J - 1), 1.0},
          {at(n, 1, J - 1), 1.0},
          {at(n, 0, J), 1.0},
          {at(n, 1, J), 1.0}},
         0.25 * rdy);
    rows(d.yedge_dy_minus, J, nx,
         {{at(q, 0, J), 36.0},
          {at(ye, 0, J), -16.0},
          {at(ye, 0, J + 1), -8.0},
          {at(xe, 0, J), -4.0},
          {at(xe, 1, J), -4.0},
          {at(n, 0, J), -1.0},
          {at(n, 1, J), -1.0},
          {at(n, 0, J + 1), -1.0},
          {at(n, 1, J + 1), -1.0}},
         0.25 * rdy);
    rows(d.yedge_dx, J, nx, {{at(n, 1, J), 1.0}, {at(n, 0, J), -1.0}}, rdx);
  }
}

LimiterStats apply_limited_derivatives(const DofField& f, const GridSpec& spec, PointDerivatives& d) {
  LimiterStats stats;
  const long nx = spec.nx;
  const long ny = spec.ny;
  for (long j = -1; j <= ny; ++j) {
    for (long i = -1; i <= nx; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        const CellValues<double> v = cell_boundary_component(f, i, j, k);
        const CellReconstruction r = reconstruct_cell(v, f.averages(i, j)[k], spec.dx, spec.dy, kMinPlateauEta);
        if (r.unlimited()) continue;
        if (r.is_plateau()) {
          ++stats.plateau;
        } else {
          ++stats.hat_only;
        }
        const bool in_x = i + 1 >= 0 && i + 1 <= nx;
        const bool in_y = j + 1 >= 0 && j + 1 <= ny;
        const bool i_ok = i >= 0 && i <= nx;
        const bool j_ok = j >= 0 && j <= ny;
        // Corners: NE owns the plus sides of node (i+1, j+1), NW the minus x
        // side of node (i, j+1), SE the minus y side of node (i+1, j).
        if (in_x && in_y) {
          d.node_dx_plus(i + 1, j + 1)[k] = derivative(r, CellPoint::NE, Axis::X);
          d.node_dy_plus(i + 1, j + 1)[k] = derivative(r, CellPoint::NE, Axis::Y);
        }
        if (i_ok && in_y) d.node_dx_minus(i, j + 1)[k] = derivative(r, CellPoint::NW, Axis::X);
        if (in_x && j_ok) d.node_dy_minus(i + 1, j)[k] = derivative(r, CellPoint::SE, Axis::Y);
        // Edge midpoints, normal direction only.
        if (j >= 0 && j < ny) {
          if (in_x) d.xedge_dx_plus(i + 1, j)[k] = derivative(r, CellPoint::E, Axis::X);
          if (i_ok) d.xedge_dx_minus(i, j)[k] = derivative(r, CellPoint::W, Axis::X);
        }
        if (i >= 0 && i < nx) {
          if (in_y) d.yedge_dy_plus(i, j + 1)[k] = derivative(r, CellPoint::N, Axis::Y);
          if (j_ok) d.yedge_dy_minus(i, j)[k] = derivative(r, CellPoint::S, Axis::Y);
        }
      }
    }
  }
  return stats;
}

PointRhs allocate_point_rhs(const GridSpec& spec) {
  return {StateArray(spec.nx + 1, spec.ny + 1), StateArray(spec.nx + 1, spec.ny),
          StateArray(spec.nx, spec.ny + 1)};
}

void point_rhs(const DofField& f, const GridSpec& spec, bool limiter_on, const GasParams& gas,
               PointDerivatives& d, PointRhs& out, LimiterStats* stats) {
  closed_form_derivatives(f, spec, d);
  if (limiter_on) {
    const LimiterStats s = apply_limited_derivatives(f, spec, d);
    if (stats != nullptr) *stats += s;
  }
  const long nx = spec.nx;
  const long ny = spec.ny;
  const char* family = "node";
  long pi = 0;
  long pj = 0;
  try {
    for (long J = 0; J <= ny; ++J) {
      for (long I = 0; I <= nx; ++I) {
        pi = I;
        pj = J;
        const ConservedState& q = f.nodes(I, J);
        out.nodes(I, J) = -(upwind_product(q, d.node_dx_plus(I, J), d.node_dx_minus(I, J), gas, Axis::X) +
                            upwind_product(q, d.node_dy_plus(I, J), d.node_dy_minus(I, J), gas, Axis::Y));
      }
    }
    family = "xedge";
    for (long j = 0; j < ny; ++j) {
      for (long I = 0; I <= nx; ++I) {
        pi = I;
        pj = j;
        const ConservedState& q = f.xedges(I, j);
        out.xedges(I, j) = -(upwind_product(q, d.xedge_dx_plus(I, j), d.xedge_dx_minus(I, j), gas, Axis::X) +
                             jacobian_product(q, d.xedge_dy(I, j), gas, Axis::Y));
      }
    }
    family = "yedge";
    for (long J = 0; J <= ny; ++J) {
      for (long i = 0; i < nx; ++i) {
        pi = i;
        pj = J;
        const ConservedState& q = f.yedges(i, J);
        out.yedges(i, J) = -(upwind_product(q, d.yedge_dy_plus(i, J), d.yedge_dy_minus(i, J), gas, Axis::Y) +
                             jacobian_product(q, d.yedge_dx(i, J), gas, Axis::X));
      }
    }
  } catch (const DomainError& e) {
    throw e.with_location(dof_name(family, pi, pj));
  }
}

}  // namespace afx
