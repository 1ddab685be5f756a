// Copyright 2026 The RSA-Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2/FMA variants of the dense kernels. Compiled with per-function target
// attributes so the rest of the binary stays baseline x86-64.

#include "kernels/variants.h"

#if RSA_HAVE_AVX2_VARIANTS

#include <immintrin.h>

#define RSA_AVX2 __attribute__((target("avx2,fma")))

namespace rsa::kernels {
namespace {

RSA_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

RSA_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

RSA_AVX2 void gemv(const double* a, std::size_t rows, std::size_t cols,
                   const double* x, const double* bias, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double acc = dot(a + r * cols, x, cols);
    y[r] = bias ? acc + bias[r] : acc;
  }
}

RSA_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

RSA_AVX2 void gemv_t_acc(const double* a, std::size_t rows, std::size_t cols,
                         const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) axpy(x[r], a + r * cols, y, cols);
}

RSA_AVX2 void ger(double alpha, const double* x, std::size_t m,
                  const double* y, std::size_t n, double* a) {
  for (std::size_t i = 0; i < m; ++i) axpy(alpha * x[i], y, a + i * n, n);
}

}  // namespace

const DenseKernels& avx2_dense_kernels() {
  static const DenseKernels table{dot, gemv, gemv_t_acc, axpy, ger};
  return table;
}

}  // namespace rsa::kernels

#endif  // RSA_HAVE_AVX2_VARIANTS
