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

#include "rsa/kernels/dense.h"

#include "kernels/variants.h"

namespace rsa::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x,
          const double* bias, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double acc = dot(a + r * cols, x, cols);
    y[r] = bias ? acc + bias[r] : acc;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_t_acc(const double* a, std::size_t rows, std::size_t cols,
                const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) axpy(x[r], a + r * cols, y, cols);
}

void ger(double alpha, const double* x, std::size_t m, const double* y,
         std::size_t n, double* a) {
  for (std::size_t i = 0; i < m; ++i) axpy(alpha * x[i], y, a + i * n, n);
}

}  // namespace

const DenseKernels& scalar_dense_kernels() {
  static const DenseKernels table{dot, gemv, gemv_t_acc, axpy, ger};
  return table;
}

const DenseKernels& dense_kernels(Isa isa) {
#if RSA_HAVE_AVX2_VARIANTS
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) {
    return avx2_dense_kernels();
  }
#else
  (void)isa;
#endif
  return scalar_dense_kernels();
}

}  // namespace rsa::kernels
