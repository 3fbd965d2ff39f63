#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "afx/state.hpp"

// Data-parallel inner loops. Every kernel has a scalar reference version and
// an AVX2 version with the same operation order, so both produce bitwise
// identical results (nothing here is compiled with FMA contraction).
namespace afx::simd {

enum class Backend { Scalar, Avx2 };

[[nodiscard]] std::string_view name(Backend b);
[[nodiscard]] bool avx2_available();

// Best backend the CPU supports, unless AFX_SIMD=scalar|avx2 says otherwise.
[[nodiscard]] Backend active_backend();
// Overrides the active backend (tests, benchmarks). Throws if unsupported.
void set_backend(Backend b);

// One term of a row stencil: weight * row[i].
struct RowTerm {
  const ConservedState* row;
  double weight;
};

struct Kernels {
  // out[i] = scale * (w0 row0[i] + w1 row1[i] + ...), i in [0, n).
  void (*weighted_rows)(ConservedState* out, const RowTerm* terms, std::size_t nterms, double scale,
                        std::size_t n);
  // out[k] = base[k] + b * ((stage[k] - base[k]) + dt * rhs[k]), k in [0, n).
  void (*stage_combine)(double* out, const double* base, const double* stage, const double* rhs,
                        double b, double dt, std::size_t n);
  // Min / max of a biparabolic (9 coefficients, x-powers fastest) over the
  // tensor grid xs x ys, folded into the incoming *min_out / *max_out.
  void (*biparabolic_minmax)(const double* a, const double* xs, std::size_t nx, const double* ys,
                             std::size_t ny, double* min_out, double* max_out);
};

[[nodiscard]] const Kernels& kernels(Backend b);
[[nodiscard]] const Kernels& kernels();

namespace detail {
extern const Kernels scalar_kernels;
extern const Kernels avx2_kernels;
}  // namespace detail

}  // namespace afx::simd
