#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "afx/errors.hpp"
#include "afx/state.hpp"

namespace afx {

enum class BcKind { Periodic, Extrapolate };

// One kind per axis; both sides of an axis always share it.
struct BoundaryCondition {
  BcKind x = BcKind::Periodic;
  BcKind y = BcKind::Periodic;

  static constexpr BoundaryCondition uniform(BcKind k) { return {k, k}; }
  friend constexpr bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

struct GridSpec {
  long nx = 0;
  long ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  BoundaryCondition bc{};

  // Throws ContractError unless nx, ny >= 3 and dx, dy > 0.
  void validate() const;

  [[nodiscard]] double x_face(long i) const { return x0 + static_cast<double>(i) * dx; }
  [[nodiscard]] double y_face(long j) const { return y0 + static_cast<double>(j) * dy; }
  [[nodiscard]] double x_center(long i) const { return x0 + (static_cast<double>(i) + 0.5) * dx; }
  [[nodiscard]] double y_center(long j) const { return y0 + (static_cast<double>(j) + 0.5) * dy; }
};

inline constexpr long kGhost = 2;

// Dense 2D array of physical extent (ni x nj) plus kGhost slots on every
// side. Index (i, j) with -kGhost <= i < ni + kGhost; i runs fastest.
template <typename T>
class GhostArray {
 public:
  GhostArray() = default;
  GhostArray(long ni, long nj) : ni_(ni), nj_(nj), data_(static_cast<std::size_t>(stride() * (nj + 2 * kGhost))) {}

  [[nodiscard]] long ni() const noexcept { return ni_; }
  [[nodiscard]] long nj() const noexcept { return nj_; }
  [[nodiscard]] long stride() const noexcept { return ni_ + 2 * kGhost; }

  [[nodiscard]] bool in_range(long i, long j) const noexcept {
    return i >= -kGhost && i < ni_ + kGhost && j >= -kGhost && j < nj_ + kGhost;
  }

  T& operator()(long i, long j) noexcept { return data_[offset(i, j)]; }
  const T& operator()(long i, long j) const noexcept { return data_[offset(i, j)]; }

  // Bounds-checked access; throws IndexError past the ghost margin.
  T& at(long i, long j) {
    check(i, j);
    return data_[offset(i, j)];
  }
  const T& at(long i, long j) const {
    check(i, j);
    return data_[offset(i, j)];
  }

  [[nodiscard]] std::size_t offset(long i, long j) const noexcept {
    return static_cast<std::size_t>((j + kGhost) * stride() + (i + kGhost));
  }

  std::span<T> raw() noexcept { return data_; }
  std::span<const T> raw() const noexcept { return data_; }

  void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const GhostArray&, const GhostArray&) = default;

 private:
  void check(long i, long j) const {
    if (!in_range(i, j)) {
      throw IndexError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside ghost margin of " + std::to_string(ni_) + "x" + std::to_string(nj_) +
                       " array");
    }
  }

  long ni_ = 0;
  long nj_ = 0;
  std::vector<T> data_;
};

using StateArray = GhostArray<ConservedState>;

// Cell averages plus the shared point values. Node (I, J) sits at
// (x_face(I), y_face(J)); xedge (I, j) at (x_face(I), y_center(j)) on a
// vertical face; yedge (i, J) at (x_center(i), y_face(J)) on a horizontal face.
struct DofField {
  StateArray averages;  // nx x ny
  StateArray nodes;     // (nx+1) x (ny+1)
  StateArray xedges;    // (nx+1) x ny
  StateArray yedges;    // nx x (ny+1)

  friend bool operator==(const DofField&, const DofField&) = default;
};

[[nodiscard]] DofField allocate(const GridSpec& spec);

void fill_ghosts(DofField& field, const GridSpec& spec);

// Where a dof sits on the boundary of a cell. Order matches CellValues.
enum class CellPoint { SW, S, SE, W, E, NW, N, NE };

// The 8 boundary point values of one cell, in CellPoint order.
template <typename T>
struct CellValues {
  std::array<T, 8> v{};

  T& operator[](CellPoint p) { return v[static_cast<std::size_t>(p)]; }
  const T& operator[](CellPoint p) const { return v[static_cast<std::size_t>(p)]; }
};

[[nodiscard]] CellValues<ConservedState> cell_boundary_values(const DofField& field, long i, long j);

// Component k of every boundary value of cell (i, j).
[[nodiscard]] CellValues<double> cell_boundary_component(const DofField& field, long i, long j,
                                                         std::size_t k);

// Cell-local offsets (in units of dx/2, dy/2) of each CellPoint.
[[nodiscard]] constexpr std::array<int, 2> cell_point_offset(CellPoint p) {
  constexpr std::array<std::array<int, 2>, 8> table{
      {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
  return table[static_cast<std::size_t>(p)];
}

}  // namespace afx
