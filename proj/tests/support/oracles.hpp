#pragma once

#include <array>
#include <functional>
#include <random>

#include "afx/grid.hpp"
#include "afx/reconstruction.hpp"

// Independent reference computations shared by the unit tests and the
// acceptance suite.
namespace afx::testing {

inline constexpr std::array<CellPoint, 8> kPoints{CellPoint::SW, CellPoint::S, CellPoint::SE, CellPoint::W,
                                                  CellPoint::E,  CellPoint::NW, CellPoint::N, CellPoint::NE};

// Reference coordinates in [-1/2, 1/2]^2 of a boundary dof.
[[nodiscard]] std::array<double, 2> ref_location(CellPoint p);

// 5-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 5> kGaussX{-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussW{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                               0.4786286704993665, 0.2369268850561891};

// Average over the reference cell by tensor Gauss on sub x sub squares.
[[nodiscard]] double gauss_average(const std::function<double(double, double)>& f, int sub);

// Exact cell average of a plateau reconstruction: each trapeze is mapped from
// (s, xi), s in [1 - 2 eta, 1], xi in [-1/2, 1/2], where the function is a
// polynomial in s and xi on each half xi < 0, xi > 0.
[[nodiscard]] double plateau_average(const CellReconstruction& r);

// Exact average of any reconstruction: Gauss per quadrant for the piecewise
// biparabolic form, plateau_average for plateaus.
[[nodiscard]] double reconstruction_average(const CellReconstruction& r);

[[nodiscard]] CellValues<double> random_values(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);

// Fills every physical dof (points by sampling, averages by 5x5 Gauss per
// cell) from f and refreshes ghosts.
void fill_from(DofField& field, const GridSpec& spec,
               const std::function<ConservedState(double, double)>& f);

// Point dofs only; averages are left untouched and ghosts are not filled.
void fill_points(DofField& field, const GridSpec& spec,
                 const std::function<ConservedState(double, double)>& f);

}  // namespace afx::testing
