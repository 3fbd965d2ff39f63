#include <algorithm>

#include "afx/simd.hpp"

namespace afx::simd::detail {
namespace {

void weighted_rows(ConservedState* out, const RowTerm* terms, std::size_t nterms, double scale,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      double acc = terms[0].weight * terms[0].row[i][k];
      for (std::size_t t = 1; t < nterms; ++t) acc = acc + terms[t].weight * terms[t].row[i][k];
      out[i][k] = acc * scale;
    }
  }
}

void stage_combine(double* out, const double* base, const double* stage, const double* rhs, double b,
                   double dt, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = base[k] + b * ((stage[k] - base[k]) + dt * rhs[k]);
}

void biparabolic_minmax(const double* a, const double* xs, std::size_t nx, const double* ys,
                        std::size_t ny, double* min_out, double* max_out) {
  double lo = *min_out;
  double hi = *max_out;
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = ys[j];
    const double c0 = a[0] + y * (a[3] + y * a[6]);
    const double c1 = a[1] + y * (a[4] + y * a[7]);
    const double c2 = a[2] + y * (a[5] + y * a[8]);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = xs[i];
      const double v = c0 + x * (c1 + x * c2);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  *min_out = lo;
  *max_out = hi;
}

}  // namespace

const Kernels scalar_kernels{&weighted_rows, &stage_combine, &biparabolic_minmax};

}  // namespace afx::simd::detail
