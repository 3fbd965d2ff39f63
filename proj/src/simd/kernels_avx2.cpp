// Compiled with -mavx2 -ffp-contract=off; only reached after a runtime CPU check.
#include <algorithm>

#include "afx/simd.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace afx::simd::detail {
namespace {

void weighted_rows(ConservedState* out, const RowTerm* terms, std::size_t nterms, double scale,
                   std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  for (std::size_t i = 0; i < n; ++i) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(terms[0].weight), _mm256_load_pd(terms[0].row[i].c.data()));
    for (std::size_t t = 1; t < nterms; ++t) {
      const __m256d term =
          _mm256_mul_pd(_mm256_set1_pd(terms[t].weight), _mm256_load_pd(terms[t].row[i].c.data()));
      acc = _mm256_add_pd(acc, term);
    }
    _mm256_store_pd(out[i].c.data(), _mm256_mul_pd(acc, s));
  }
}

void stage_combine(double* out, const double* base, const double* stage, const double* rhs, double b,
                   double dt, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(base + k);
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(stage + k), x);
    const __m256d inc = _mm256_add_pd(diff, _mm256_mul_pd(vdt, _mm256_loadu_pd(rhs + k)));
    _mm256_storeu_pd(out + k, _mm256_add_pd(x, _mm256_mul_pd(vb, inc)));
  }
  for (; k < n; ++k) out[k] = base[k] + b * ((stage[k] - base[k]) + dt * rhs[k]);
}

void biparabolic_minmax(const double* a, const double* xs, std::size_t nx, const double* ys,
                        std::size_t ny, double* min_out, double* max_out) {
  __m256d lo = _mm256_set1_pd(*min_out);
  __m256d hi = _mm256_set1_pd(*max_out);
  double lo_s = *min_out;
  double hi_s = *max_out;
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = ys[j];
    const double c0 = a[0] + y * (a[3] + y * a[6]);
    const double c1 = a[1] + y * (a[4] + y * a[7]);
    const double c2 = a[2] + y * (a[5] + y * a[8]);
    const __m256d v0 = _mm256_set1_pd(c0);
    const __m256d v1 = _mm256_set1_pd(c1);
    const __m256d v2 = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= nx; i += 4) {
      const __m256d x = _mm256_loadu_pd(xs + i);
      const __m256d v = _mm256_add_pd(v0, _mm256_mul_pd(x, _mm256_add_pd(v1, _mm256_mul_pd(x, v2))));
      lo = _mm256_min_pd(lo, v);
      hi = _mm256_max_pd(hi, v);
    }
    for (; i < nx; ++i) {
      const double x = xs[i];
      const double v = c0 + x * (c1 + x * c2);
      lo_s = std::min(lo_s, v);
      hi_s = std::max(hi_s, v);
    }
  }
  alignas(32) double l[4];
  alignas(32) double h[4];
  _mm256_store_pd(l, lo);
  _mm256_store_pd(h, hi);
  for (int k = 0; k < 4; ++k) {
    lo_s = std::min(lo_s, l[k]);
    hi_s = std::max(hi_s, h[k]);
  }
  *min_out = lo_s;
  *max_out = hi_s;
}

}  // namespace

const Kernels avx2_kernels{&weighted_rows, &stage_combine, &biparabolic_minmax};

}  // namespace afx::simd::detail

#else

namespace afx::simd::detail {
// Non-x86 build: never selected, avx2_available() is false.
const Kernels avx2_kernels{nullptr, nullptr, nullptr};
}  // namespace afx::simd::detail

#endif
