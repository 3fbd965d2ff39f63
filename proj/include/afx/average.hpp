#pragma once

#include "afx/euler.hpp"
#include "afx/grid.hpp"

// Cell-average update: Simpson quadrature of the flux along each face from
// the two end nodes and the face midpoint.
namespace afx {

using FluxFn = ConservedState (*)(const ConservedState&, const GasParams&);

struct SimpsonWeights {
  static constexpr double end = 1.0 / 6.0;
  static constexpr double mid = 4.0 / 6.0;
};

// Face-averaged x-flux through vertical face (I, j), I in [0, nx]. The flux
// function is a parameter so the quadrature can be tested on its own.
[[nodiscard]] StateArray interface_flux_x(const DofField& field, const GridSpec& spec, const GasParams& gas,
                                          FluxFn fx = &flux_x);
// Face-averaged y-flux through horizontal face (i, J), J in [0, ny].
[[nodiscard]] StateArray interface_flux_y(const DofField& field, const GridSpec& spec, const GasParams& gas,
                                          FluxFn fy = &flux_y);

// Reusable face-flux buffers.
struct AverageWork {
  StateArray node_fx, node_fy, xedge_fx, yedge_fy;
  StateArray face_x, face_y;
};

[[nodiscard]] AverageWork allocate_average_work(const GridSpec& spec);

// d(qbar)/dt for every physical cell, written to out (nx x ny).
void average_rhs(const DofField& field, const GridSpec& spec, const GasParams& gas, AverageWork& work,
                 StateArray& out);

}  // namespace afx
