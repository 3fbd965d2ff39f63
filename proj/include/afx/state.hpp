#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace afx {

struct GasParams {
  double gamma = 1.4;
};

// (rho, rho u, rho v, e). One 256-bit lane group, so grid arrays of these
// can be streamed straight through AVX2 kernels.
struct alignas(32) ConservedState {
  std::array<double, 4> c{};

  constexpr ConservedState() = default;
  constexpr ConservedState(double rho, double rhou, double rhov, double e) : c{rho, rhou, rhov, e} {}

  [[nodiscard]] constexpr double rho() const { return c[0]; }
  [[nodiscard]] constexpr double rhou() const { return c[1]; }
  [[nodiscard]] constexpr double rhov() const { return c[2]; }
  [[nodiscard]] constexpr double e() const { return c[3]; }

  constexpr double& operator[](std::size_t k) { return c[k]; }
  constexpr double operator[](std::size_t k) const { return c[k]; }

  constexpr ConservedState& operator+=(const ConservedState& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] += o.c[k];
    return *this;
  }
  constexpr ConservedState& operator-=(const ConservedState& o) {
    for (std::size_t k = 0; k < 4; ++k) c[k] -= o.c[k];
    return *this;
  }
  constexpr ConservedState& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend constexpr ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
  friend constexpr ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
  friend constexpr ConservedState operator*(ConservedState a, double s) { return a *= s; }
  friend constexpr ConservedState operator*(double s, ConservedState a) { return a *= s; }
  friend constexpr ConservedState operator-(ConservedState a) { return a *= -1.0; }
  friend constexpr bool operator==(const ConservedState&, const ConservedState&) = default;
};

static_assert(sizeof(ConservedState) == 4 * sizeof(double));

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;

  friend constexpr bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

[[nodiscard]] ConservedState to_conserved(const PrimitiveState& w, const GasParams& gas);
[[nodiscard]] PrimitiveState to_primitive(const ConservedState& q, const GasParams& gas);

[[nodiscard]] inline bool is_finite(const ConservedState& q) {
  return std::isfinite(q[0]) && std::isfinite(q[1]) && std::isfinite(q[2]) && std::isfinite(q[3]);
}

}  // namespace afx
