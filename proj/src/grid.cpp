#include "afx/grid.hpp"

namespace afx {

void GridSpec::validate() const {
  if (nx < 3 || ny < 3) throw ContractError("grid needs at least 3x3 cells");
  if (!(dx > 0.0) || !(dy > 0.0)) throw ContractError("grid spacings must be positive");
}

DofField allocate(const GridSpec& spec) {
  spec.validate();
  return {StateArray(spec.nx, spec.ny), StateArray(spec.nx + 1, spec.ny + 1),
          StateArray(spec.nx + 1, spec.ny), StateArray(spec.nx, spec.ny + 1)};
}

namespace {

// Source index for ghost slot i along one axis. `cells` is the number of
// cells along the axis; point-type arrays have cells+1 physical slots and
// identify slot `cells` with slot 0 when periodic.
long source_index(long i, long cells, bool point_type, BcKind kind) {
  const long last = point_type ? cells : cells - 1;
  if (kind == BcKind::Extrapolate) return std::clamp(i, 0L, last);
  if (i < 0) return i + cells;
  if (i > last || (point_type && i == last)) return i - cells;
  return i;
}

void fill_array(StateArray& a, long cells_x, long cells_y, bool point_x, bool point_y,
                const BoundaryCondition& bc) {
  const long ni = a.ni();
  const long nj = a.nj();
  for (long j = 0; j < nj; ++j) {
    for (long i = -kGhost; i < ni + kGhost; ++i) {
      const bool ghost = i < 0 || i >= ni || (point_x && bc.x == BcKind::Periodic && i == ni - 1);
      if (ghost) a(i, j) = a(source_index(i, cells_x, point_x, bc.x), j);
    }
  }
  for (long j = -kGhost; j < nj + kGhost; ++j) {
    const bool ghost = j < 0 || j >= nj || (point_y && bc.y == BcKind::Periodic && j == nj - 1);
    if (!ghost) continue;
    const long src = source_index(j, cells_y, point_y, bc.y);
    for (long i = -kGhost; i < ni + kGhost; ++i) a(i, j) = a(i, src);
  }
}

}  // namespace

void fill_ghosts(DofField& field, const GridSpec& spec) {
  fill_array(field.averages, spec.nx, spec.ny, false, false, spec.bc);
  fill_array(field.nodes, spec.nx, spec.ny, true, true, spec.bc);
  fill_array(field.xedges, spec.nx, spec.ny, true, false, spec.bc);
  fill_array(field.yedges, spec.nx, spec.ny, false, true, spec.bc);
}

CellValues<ConservedState> cell_boundary_values(const DofField& f, long i, long j) {
  if (!f.averages.in_range(i - 1, j - 1) || !f.averages.in_range(i + 1, j + 1)) {
    throw IndexError("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside the first ghost ring");
  }
  return {{f.nodes(i, j), f.yedges(i, j), f.nodes(i + 1, j), f.xedges(i, j), f.xedges(i + 1, j),
           f.nodes(i, j + 1), f.yedges(i, j + 1), f.nodes(i + 1, j + 1)}};
}

CellValues<double> cell_boundary_component(const DofField& f, long i, long j, std::size_t k) {
  return {{f.nodes(i, j)[k], f.yedges(i, j)[k], f.nodes(i + 1, j)[k], f.xedges(i, j)[k],
           f.xedges(i + 1, j)[k], f.nodes(i, j + 1)[k], f.yedges(i, j + 1)[k],
           f.nodes(i + 1, j + 1)[k]}};
}

}  // namespace afx
