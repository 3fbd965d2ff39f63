#include "afx/euler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afx/errors.hpp"

namespace afx {

std::string DomainError::compose(const std::string& what, const ConservedState& q,
                                 const std::string& location) {
  std::ostringstream os;
  os.precision(17);
  os << what << " [state rho=" << q[0] << " rhou=" << q[1] << " rhov=" << q[2] << " e=" << q[3]
     << "]";
  if (!location.empty()) os << " at " << location;
  return os.str();
}

ConservedState to_conserved(const PrimitiveState& w, const GasParams& gas) {
  const double e = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return {w.rho, w.rho * w.u, w.rho * w.v, e};
}

PrimitiveState to_primitive(const ConservedState& q, const GasParams& gas) {
  return {q.rho(), q.rhou() / q.rho(), q.rhov() / q.rho(), pressure(q, gas)};
}

ConservedState mat_vec(const Mat4& m, const ConservedState& v) {
  ConservedState out;
  for (std::size_t r = 0; r < 4; ++r) {
    out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
  }
  return out;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t k = 0; k < 4; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

Mat4 mat_add(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r][c] = a[r][c] + b[r][c];
  return out;
}

namespace {

void require_density(const ConservedState& q) {
  if (!(q.rho() > 0.0) || !is_finite(q)) throw DomainError("non-positive or non-finite density", q);
}

// Swap the two momentum components; maps the y-direction problem onto x.
constexpr ConservedState swap_momenta(const ConservedState& q) { return {q[0], q[2], q[1], q[3]}; }

Mat4 swap_rows_cols(const Mat4& m) {
  constexpr std::array<std::size_t, 4> perm{0, 2, 1, 3};
  Mat4 out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r][c] = m[perm[r]][perm[c]];
  return out;
}

}  // namespace

double pressure(const ConservedState& q, const GasParams& gas) {
  require_density(q);
  return (gas.gamma - 1.0) * (q.e() - 0.5 * (q.rhou() * q.rhou() + q.rhov() * q.rhov()) / q.rho());
}

double sound_speed(const ConservedState& q, const GasParams& gas) {
  const double p = pressure(q, gas);
  if (!(p > 0.0)) throw DomainError("non-positive pressure", q);
  return std::sqrt(gas.gamma * p / q.rho());
}

ConservedState flux_x(const ConservedState& q, const GasParams& gas) {
  const double p = pressure(q, gas);
  const double u = q.rhou() / q.rho();
  return {q.rhou(), q.rhou() * u + p, q.rhov() * u, u * (q.e() + p)};
}

ConservedState flux_y(const ConservedState& q, const GasParams& gas) {
  const double p = pressure(q, gas);
  const double v = q.rhov() / q.rho();
  return {q.rhov(), q.rhou() * v, q.rhov() * v + p, v * (q.e() + p)};
}

ConservedState flux(const ConservedState& q, const GasParams& gas, Axis axis) {
  return axis == Axis::X ? flux_x(q, gas) : flux_y(q, gas);
}

Mat4 jacobian_x(const ConservedState& q, const GasParams& gas) {
  require_density(q);
  const double g1 = gas.gamma - 1.0;
  const double u = q.rhou() / q.rho();
  const double v = q.rhov() / q.rho();
  const double ke = 0.5 * (u * u + v * v);
  const double h = (q.e() + pressure(q, gas)) / q.rho();
  return {{{0.0, 1.0, 0.0, 0.0},
           {g1 * ke - u * u, (3.0 - gas.gamma) * u, -g1 * v, g1},
           {-u * v, v, u, 0.0},
           {u * (g1 * ke - h), h - g1 * u * u, -g1 * u * v, gas.gamma * u}}};
}

Mat4 jacobian_y(const ConservedState& q, const GasParams& gas) {
  return swap_rows_cols(jacobian_x(swap_momenta(q), gas));
}

Mat4 jacobian(const ConservedState& q, const GasParams& gas, Axis axis) {
  return axis == Axis::X ? jacobian_x(q, gas) : jacobian_y(q, gas);
}

namespace {

// Normal velocity un, tangential ut, in the frame where the axis is x.
struct LocalFrame {
  double un, ut, c, h, b1, b2;
};

LocalFrame local_frame(const ConservedState& q, const GasParams& gas) {
  const double c = sound_speed(q, gas);
  const double u = q.rhou() / q.rho();
  const double v = q.rhov() / q.rho();
  const double h = (q.e() + pressure(q, gas)) / q.rho();
  const double b1 = (gas.gamma - 1.0) / (c * c);
  return {u, v, c, h, b1, 0.5 * b1 * (u * u + v * v)};
}

EigenSystem eigensystem_x(const ConservedState& q, const GasParams& gas) {
  const auto [u, v, c, h, b1, b2] = local_frame(q, gas);
  EigenSystem es;
  es.lambda = {u - c, u, u, u + c};
  // Columns: acoustic -, entropy, shear, acoustic +.
  es.right = {{{1.0, 1.0, 0.0, 1.0},
               {u - c, u, 0.0, u + c},
               {v, v, 1.0, v},
               {h - u * c, 0.5 * (u * u + v * v), v, h + u * c}}};
  es.left = {{{0.5 * (b2 + u / c), 0.5 * (-b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1},
              {1.0 - b2, b1 * u, b1 * v, -b1},
              {-v, 0.0, 1.0, 0.0},
              {0.5 * (b2 - u / c), 0.5 * (-b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1}}};
  return es;
}

}  // namespace

EigenSystem eigensystem(const ConservedState& q, const GasParams& gas, Axis axis) {
  if (axis == Axis::X) return eigensystem_x(q, gas);
  EigenSystem es = eigensystem_x(swap_momenta(q), gas);
  es.right = swap_rows_cols(es.right);
  es.left = swap_rows_cols(es.left);
  return es;
}

JacobianSplit split_matrix(const Mat4& right, const std::array<double, 4>& lambda,
                           const Mat4& left) {
  JacobianSplit s;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!std::isfinite(lambda[k])) {
      throw DomainError("non-finite eigenvalue in Jacobian split", ConservedState{});
    }
    const double lp = std::max(0.0, lambda[k]);
    const double lm = std::min(0.0, lambda[k]);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const double rl = right[r][k] * left[k][c];
        s.j_plus[r][c] += lp * rl;
        s.j_minus[r][c] += lm * rl;
      }
    }
  }
  return s;
}

JacobianSplit split_jacobian(const ConservedState& q, const GasParams& gas, Axis axis) {
  const EigenSystem es = eigensystem(q, gas, axis);
  return split_matrix(es.right, es.lambda, es.left);
}

ConservedState upwind_product(const ConservedState& q, const ConservedState& d_plus,
                              const ConservedState& d_minus, const GasParams& gas, Axis axis) {
  // Work in the x-frame; for y, swap momenta on the way in and out.
  const bool swap = axis == Axis::Y;
  const ConservedState qq = swap ? swap_momenta(q) : q;
  const ConservedState dp = swap ? swap_momenta(d_plus) : d_plus;
  const ConservedState dm = swap ? swap_momenta(d_minus) : d_minus;
  const auto [u, v, c, h, b1, b2] = local_frame(qq, gas);

  auto dot_acoustic = [&](const ConservedState& d, double sign) {
    return 0.5 * (b2 - sign * u / c) * d[0] + 0.5 * (-b1 * u + sign / c) * d[1] -
           0.5 * b1 * v * d[2] + 0.5 * b1 * d[3];
  };
  auto dot_entropy = [&](const ConservedState& d) {
    return (1.0 - b2) * d[0] + b1 * u * d[1] + b1 * v * d[2] - b1 * d[3];
  };
  auto dot_shear = [&](const ConservedState& d) { return -v * d[0] + d[2]; };
  auto split = [&](double lambda, double wp, double wm) {
    return std::max(0.0, lambda) * wp + std::min(0.0, lambda) * wm;
  };

  const double w1 = split(u - c, dot_acoustic(dp, -1.0), dot_acoustic(dm, -1.0));
  const double w2 = split(u, dot_entropy(dp), dot_entropy(dm));
  const double w3 = split(u, dot_shear(dp), dot_shear(dm));
  const double w4 = split(u + c, dot_acoustic(dp, 1.0), dot_acoustic(dm, 1.0));

  const ConservedState out{w1 + w2 + w4,
                           w1 * (u - c) + w2 * u + w4 * (u + c),
                           (w1 + w2 + w4) * v + w3,
                           w1 * (h - u * c) + w2 * 0.5 * (u * u + v * v) + w3 * v + w4 * (h + u * c)};
  return swap ? swap_momenta(out) : out;
}

ConservedState jacobian_product(const ConservedState& q, const ConservedState& d,
                                const GasParams& gas, Axis axis) {
  return mat_vec(jacobian(q, gas, axis), d);
}

WaveSpeeds max_wave_speeds(const ConservedState& q, const GasParams& gas) {
  const double c = sound_speed(q, gas);
  return {std::abs(q.rhou() / q.rho()) + c, std::abs(q.rhov() / q.rho()) + c};
}

}  // namespace afx
