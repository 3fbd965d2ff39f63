#pragma once

#include "afx/euler.hpp"
#include "afx/grid.hpp"

// Point-value update: one-sided derivatives of the per-cell reconstructions
// at every shared point dof, combined through the split flux Jacobians.
namespace afx {

// Derivatives at the physical point dofs. "plus" comes from the cell on the
// low side of the point (left / below), "minus" from the high side.
struct PointDerivatives {
  StateArray node_dx_plus, node_dx_minus, node_dy_plus, node_dy_minus;  // (nx+1) x (ny+1)
  StateArray xedge_dx_plus, xedge_dx_minus, xedge_dy;                   // (nx+1) x ny
  StateArray yedge_dy_plus, yedge_dy_minus, yedge_dx;                   // nx x (ny+1)
};

[[nodiscard]] PointDerivatives allocate_derivatives(const GridSpec& spec);

// Per-step limiter activity, counted per (cell, component) over the cells
// that feed physical point dofs.
struct LimiterStats {
  long hat_only = 0;
  long plateau = 0;

  LimiterStats& operator+=(const LimiterStats& o) {
    hat_only += o.hat_only;
    plateau += o.plateau;
    return *this;
  }
};

// Closed-form stencils of the unlimited biparabolic reconstruction. Needs
// filled ghosts.
void closed_form_derivatives(const DofField& field, const GridSpec& spec, PointDerivatives& out);

// Plateaus thinner than this are not used as a derivative source.
inline constexpr double kMinPlateauEta = 0.05;

// Replaces, component by component, the derivatives owned by every cell whose
// reconstruction is limited (a hat edge or a plateau).
LimiterStats apply_limited_derivatives(const DofField& field, const GridSpec& spec, PointDerivatives& d);

struct PointRhs {
  StateArray nodes;
  StateArray xedges;
  StateArray yedges;
};

[[nodiscard]] PointRhs allocate_point_rhs(const GridSpec& spec);

// dq/dt at every physical point dof. Throws DomainError, with the dof in the
// location, when a point state has no real sound speed.
void point_rhs(const DofField& field, const GridSpec& spec, bool limiter_on, const GasParams& gas,
               PointDerivatives& work, PointRhs& out, LimiterStats* stats = nullptr);

}  // namespace afx
