#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "afx/euler.hpp"
#include "afx/grid.hpp"

// Continuous per-cell reconstruction of one scalar component from the cell
// average and the 8 boundary point values, with hat-limiting of edges and
// plateau-limiting of cells.
//
// All polynomial pieces live in reference coordinates (xh, yh) in
// [-1/2, 1/2]^2, xh = x / dx, yh = y / dy, so anisotropic cells need no
// special casing. Public entry points that take x, y expect cell-local
// physical coordinates.
namespace afx {

enum class EdgeKind { Parabolic, Hat };

// Edges of a cell, also used to index per-edge arrays.
enum class Side { West = 0, East = 1, South = 2, North = 3 };

enum class Region {
  Whole,
  LeftHalf,
  RightHalf,
  TopHalf,
  BottomHalf,
  QuadrantNE,
  QuadrantNW,
  QuadrantSE,
  QuadrantSW
};

[[nodiscard]] bool region_contains(Region r, double xh, double yh);

// Three values along one edge, from one end through the midpoint to the other.
struct EdgeData {
  double left = 0.0;
  double mid = 0.0;
  double right = 0.0;
};

[[nodiscard]] EdgeKind classify_edge(const EdgeData& e);

// (a0 + a1 x + a2 x^2) + (a3 + a4 x + a5 x^2) y + (a6 + a7 x + a8 x^2) y^2
struct BiparabolicPiece {
  std::array<double, 9> a{};
  Region region = Region::Whole;

  [[nodiscard]] double value(double xh, double yh) const;
  [[nodiscard]] double d_dx(double xh, double yh) const;
  [[nodiscard]] double d_dy(double xh, double yh) const;
  // Integral over the piece's region (reference units; the cell has area 1).
  [[nodiscard]] double integral() const;
};

// At most four pieces; regions tile the unit cell.
class PieceSet {
 public:
  void add(const BiparabolicPiece& p) { pieces_[count_++] = p; }
  [[nodiscard]] std::span<const BiparabolicPiece> view() const { return {pieces_.data(), count_}; }
  [[nodiscard]] std::span<BiparabolicPiece> view() { return {pieces_.data(), count_}; }
  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] const BiparabolicPiece& piece_at(double xh, double yh) const;
  [[nodiscard]] double value(double xh, double yh) const { return piece_at(xh, yh).value(xh, yh); }
  [[nodiscard]] double integral() const;

 private:
  std::array<BiparabolicPiece, 4> pieces_{};
  std::size_t count_ = 0;
};

struct EdgeBasis {
  PieceSet pieces;
  double q_c = 0.0;
};

// Whole-cell function interpolating q_sw, q_w, q_nw on the west edge, zero
// at the other five boundary points, with the prescribed cell average.
// kind_s / kind_n are the kinds of the south / north edges.
[[nodiscard]] EdgeBasis edge_basis_west(double q_sw, double q_w, double q_nw, EdgeKind kind_s,
                                        EdgeKind kind_n, EdgeKind kind_w, double average);

// Basis for any edge, obtained from the west one by rotation. The values run
// counterclockwise-consistent with the west edge (S: se,s,sw; N: nw,n,ne;
// E: ne,e,se); neighbor kinds follow the same convention (S: E,W; N: W,E; E: N,S).
[[nodiscard]] EdgeBasis edge_basis(Side edge, double first, double mid, double last,
                                   EdgeKind kind_first, EdgeKind kind_last, EdgeKind kind_own,
                                   double average);

struct PiecewiseBiparabolic {
  PieceSet pieces;
  double q_c = 0.0;
};

struct Plateau {
  double eta = 0.25;
  double q_p = 0.0;
};

struct CellReconstruction {
  CellValues<double> values{};
  double qbar = 0.0;
  double dx = 1.0;
  double dy = 1.0;
  std::array<EdgeKind, 4> edge_kinds{};  // indexed by Side
  std::variant<PiecewiseBiparabolic, Plateau> form;

  [[nodiscard]] bool is_plateau() const { return std::holds_alternative<Plateau>(form); }
  [[nodiscard]] EdgeKind kind(Side s) const { return edge_kinds[static_cast<std::size_t>(s)]; }
  // Plain biparabolic with every edge parabolic: the closed-form stencils apply.
  [[nodiscard]] bool unlimited() const;
};

[[nodiscard]] std::array<EdgeKind, 4> classify_edges(const CellValues<double>& v);

struct Bounds {
  double m = 0.0;
  double M = 0.0;
};
[[nodiscard]] Bounds point_bounds(const CellValues<double>& v);

[[nodiscard]] CellReconstruction assemble_pw_biparabolic(const CellValues<double>& values, double qbar,
                                                         const std::array<EdgeKind, 4>& kinds,
                                                         double dx, double dy);

// Cell average of a plateau reconstruction with plateau value q_p at offset eta
// is area_coefficient(eta) * q_p + edge_term(eta); solved for q_p here.
[[nodiscard]] double plateau_value(const CellValues<double>& values, const std::array<EdgeKind, 4>& kinds,
                                   double qbar, double eta);

// Requires m < qbar < M (throws ContractError otherwise).
[[nodiscard]] CellReconstruction plateau(const CellValues<double>& values, double qbar,
                                         const std::array<EdgeKind, 4>& kinds, double dx, double dy);

// With min_plateau_eta > 0 a plateau thinner than that is rejected and the
// piecewise-biparabolic form is returned instead; the point update uses this.
[[nodiscard]] CellReconstruction reconstruct_cell(const CellValues<double>& values, double qbar,
                                                  double dx, double dy, double min_plateau_eta = 0.0);

// x, y cell-local physical coordinates. Throws DomainError outside the cell.
[[nodiscard]] double evaluate(const CellReconstruction& r, double x, double y);
[[nodiscard]] double evaluate_reference(const CellReconstruction& r, double xh, double yh);

enum class DiffSide { Plus, Minus, Centered };

// Partial derivative at one of the 8 boundary dofs. Tangential derivatives at
// edge midpoints use the two-node centered rule unless `side` asks for the
// one-sided slope of the adjacent half-edge; everywhere else `side` is ignored.
[[nodiscard]] double derivative(const CellReconstruction& r, CellPoint at, Axis axis,
                                DiffSide side = DiffSide::Centered);
// Same, with the dof given by cell-local coordinates; DomainError if (x, y)
// is not a dof location.
[[nodiscard]] double derivative(const CellReconstruction& r, double x, double y, Axis axis,
                                DiffSide side = DiffSide::Centered);

[[nodiscard]] double max_principle_tolerance(double m, double M);

// Samples a 17x17 uniform grid plus every region corner.
[[nodiscard]] bool violates_max_principle(const CellReconstruction& r, double m, double M);

// Sample locations used by violates_max_principle, in reference coordinates.
[[nodiscard]] std::vector<std::array<double, 2>> max_principle_samples(const CellReconstruction& r);

}  // namespace afx
