#include "afx/grid.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace afx;

namespace {

GridSpec small(BcKind k) { return {3, 3, 0.0, 0.0, 1.0, 1.0, BoundaryCondition::uniform(k)}; }

ConservedState tag(double v) { return {v, 2 * v, 3 * v, 4 * v}; }

}  // namespace

TEST_CASE("extents and ghost margin") {
  const auto spec = small(BcKind::Periodic);
  DofField f = allocate(spec);
  CHECK(f.nodes.ni() == 4);
  CHECK(f.nodes.stride() == 8);
  CHECK(f.nodes.raw().size() == 64);
  CHECK(f.nodes.in_range(-2, -2));
  CHECK(f.nodes.in_range(5, 5));
  CHECK_FALSE(f.nodes.in_range(6, 0));
  CHECK_THROWS_AS((void)f.nodes.at(-3, 0), IndexError);
  CHECK_THROWS_AS((void)f.averages.at(0, 5), IndexError);
  CHECK(f.xedges.ni() == 4);
  CHECK(f.xedges.nj() == 3);
  CHECK(f.yedges.ni() == 3);
  CHECK(f.yedges.nj() == 4);
  CHECK_THROWS_AS(GridSpec({2, 3, 0, 0, 1, 1, {}}).validate(), ContractError);
  CHECK_THROWS_AS(GridSpec({3, 3, 0, 0, 0, 1, {}}).validate(), ContractError);
}

TEST_CASE("shared point storage") {
  const auto spec = small(BcKind::Periodic);
  DofField f = allocate(spec);
  f.nodes(2, 0) = tag(7.0);
  // South-east node of cell (1, 0) is the south-west node of cell (2, 0).
  CHECK(cell_boundary_values(f, 1, 0)[CellPoint::SE] == tag(7.0));
  CHECK(cell_boundary_values(f, 2, 0)[CellPoint::SW] == tag(7.0));
  CHECK(cell_boundary_values(f, 1, 1)[CellPoint::NE] == cell_boundary_values(f, 2, 2)[CellPoint::SW]);

  testing::fill_points(f, spec, [](double x, double y) { return tag(x + 10 * y); });
  for (long j = 0; j < 3; ++j)
    for (long i = 0; i < 3; ++i) {
      const auto v = cell_boundary_values(f, i, j);
      for (CellPoint p : testing::kPoints) {
        const auto o = cell_point_offset(p);
        const double x = spec.x_center(i) + 0.5 * o[0], y = spec.y_center(j) + 0.5 * o[1];
        CHECK(v[p] == tag(x + 10 * y));
      }
      CHECK(cell_boundary_component(f, i, j, 2)[CellPoint::N] == v[CellPoint::N][2]);
    }
  const auto a = cell_boundary_values(f, 0, 1), b = cell_boundary_values(f, 1, 1);
  CHECK(a[CellPoint::NE] == b[CellPoint::NW]);
  CHECK(a[CellPoint::E] == b[CellPoint::W]);
  CHECK(a[CellPoint::SE] == b[CellPoint::SW]);
}

TEST_CASE("periodic ghosts wrap") {
  const auto spec = small(BcKind::Periodic);
  DofField f = allocate(spec);
  for (long j = 0; j < 3; ++j)
    for (long i = 0; i < 3; ++i) f.averages(i, j) = tag(static_cast<double>(i + 10 * j));
  for (long J = 0; J <= 3; ++J)
    for (long I = 0; I <= 3; ++I) f.nodes(I, J) = tag(static_cast<double>((I % 3) + 10 * (J % 3)));
  for (long j = 0; j < 3; ++j)
    for (long I = 0; I <= 3; ++I) f.xedges(I, j) = tag(static_cast<double>((I % 3) + 10 * j));
  for (long J = 0; J <= 3; ++J)
    for (long i = 0; i < 3; ++i) f.yedges(i, J) = tag(static_cast<double>(i + 10 * (J % 3)));
  fill_ghosts(f, spec);
  CHECK(f.averages(-1, 0) == f.averages(2, 0));
  CHECK(f.averages(-2, 1) == f.averages(1, 1));
  CHECK(f.averages(4, 2) == f.averages(1, 2));
  CHECK(f.averages(0, -1) == f.averages(0, 2));
  CHECK(f.averages(-1, -1) == f.averages(2, 2));
  CHECK(f.nodes(4, 0) == f.nodes(1, 0));
  CHECK(f.nodes(5, 2) == f.nodes(2, 2));
  CHECK(f.nodes(-1, 0) == f.nodes(2, 0));
  CHECK(f.nodes(0, -2) == f.nodes(0, 1));
  CHECK(f.xedges(-1, 0) == f.xedges(2, 0));
  CHECK(f.xedges(4, 1) == f.xedges(1, 1));
  CHECK(f.xedges(1, -1) == f.xedges(1, 2));
  CHECK(f.yedges(-1, 1) == f.yedges(2, 1));
  CHECK(f.yedges(1, 4) == f.yedges(1, 1));
}

TEST_CASE("extrapolated ghosts keep a constant field constant") {
  const auto spec = small(BcKind::Extrapolate);
  DofField f = allocate(spec);
  testing::fill_points(f, spec, [](double, double) { return tag(1.5); });
  for (long j = 0; j < 3; ++j)
    for (long i = 0; i < 3; ++i) f.averages(i, j) = tag(1.5);
  fill_ghosts(f, spec);
  for (const StateArray* a : {&f.averages, &f.nodes, &f.xedges, &f.yedges})
    for (long j = -kGhost; j < a->nj() + kGhost; ++j)
      for (long i = -kGhost; i < a->ni() + kGhost; ++i) CHECK((*a)(i, j) == tag(1.5));
}

TEST_CASE("mixed axes: periodic in x, extrapolated in y") {
  GridSpec spec = small(BcKind::Periodic);
  spec.bc.y = BcKind::Extrapolate;
  DofField f = allocate(spec);
  for (long j = 0; j < 3; ++j)
    for (long i = 0; i < 3; ++i) f.averages(i, j) = tag(static_cast<double>(i + 10 * j));
  fill_ghosts(f, spec);
  CHECK(f.averages(-1, 1) == f.averages(2, 1));
  CHECK(f.averages(1, -1) == f.averages(1, 0));
  CHECK(f.averages(1, 4) == f.averages(1, 2));
}
