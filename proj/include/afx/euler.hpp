#pragma once

#include <array>

#include "afx/state.hpp"

namespace afx {

enum class Axis { X, Y };

using Mat4 = std::array<std::array<double, 4>, 4>;

[[nodiscard]] ConservedState mat_vec(const Mat4& m, const ConservedState& v);
[[nodiscard]] Mat4 mat_mul(const Mat4& a, const Mat4& b);
[[nodiscard]] Mat4 mat_add(const Mat4& a, const Mat4& b);

// Closure. Both throw DomainError on rho <= 0; sound_speed also on p <= 0.
[[nodiscard]] double pressure(const ConservedState& q, const GasParams& gas);
[[nodiscard]] double sound_speed(const ConservedState& q, const GasParams& gas);

[[nodiscard]] ConservedState flux_x(const ConservedState& q, const GasParams& gas);
[[nodiscard]] ConservedState flux_y(const ConservedState& q, const GasParams& gas);
[[nodiscard]] ConservedState flux(const ConservedState& q, const GasParams& gas, Axis axis);

[[nodiscard]] Mat4 jacobian_x(const ConservedState& q, const GasParams& gas);
[[nodiscard]] Mat4 jacobian_y(const ConservedState& q, const GasParams& gas);
[[nodiscard]] Mat4 jacobian(const ConservedState& q, const GasParams& gas, Axis axis);

// J = R diag(lambda) L with L = R^-1, closed-form Euler eigenvectors.
struct EigenSystem {
  Mat4 right{};             // columns are right eigenvectors
  Mat4 left{};              // rows are left eigenvectors
  std::array<double, 4> lambda{};  // (un-c, un, un, un+c)
};

[[nodiscard]] EigenSystem eigensystem(const ConservedState& q, const GasParams& gas, Axis axis);

struct JacobianSplit {
  Mat4 j_plus{};
  Mat4 j_minus{};
};

// R diag(lambda^+) L and R diag(lambda^-) L for an arbitrary diagonalization.
[[nodiscard]] JacobianSplit split_matrix(const Mat4& right, const std::array<double, 4>& lambda,
                                         const Mat4& left);
[[nodiscard]] JacobianSplit split_jacobian(const ConservedState& q, const GasParams& gas, Axis axis);

// (J^+ d_plus + J^- d_minus) at state q, evaluated through the eigenvectors
// without forming either matrix.
[[nodiscard]] ConservedState upwind_product(const ConservedState& q, const ConservedState& d_plus,
                                            const ConservedState& d_minus, const GasParams& gas,
                                            Axis axis);

// J d at state q.
[[nodiscard]] ConservedState jacobian_product(const ConservedState& q, const ConservedState& d,
                                              const GasParams& gas, Axis axis);

struct WaveSpeeds {
  double sx = 0.0;
  double sy = 0.0;
};

// |u|+c, |v|+c.
[[nodiscard]] WaveSpeeds max_wave_speeds(const ConservedState& q, const GasParams& gas);

}  // namespace afx
