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

#ifndef RSA_KERNELS_DENSE_H_
#define RSA_KERNELS_DENSE_H_

#include <cstddef>
#include <span>

#include "rsa/kernels/dispatch.h"

namespace rsa::kernels {

// Double-precision BLAS-1/2 subset used by the dense layers. Matrices are
// row-major with `cols` as the leading dimension.
//
// The AVX2 variants reassociate sums, so they agree with the scalar reference
// to rounding only. A given ISA is deterministic run to run.
struct DenseKernels {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y = A x + bias (bias may be null).
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, const double* bias, double* y);
  // y += A^T x.
  void (*gemv_t_acc)(const double* a, std::size_t rows, std::size_t cols,
                     const double* x, double* y);
  // y += alpha x.
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // A += alpha x y^T, with A of shape (m, n).
  void (*ger)(double alpha, const double* x, std::size_t m, const double* y,
              std::size_t n, double* a);
};

const DenseKernels& dense_kernels(Isa isa);
inline const DenseKernels& dense_kernels() {
  return dense_kernels(active_isa());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return dense_kernels().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  dense_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace rsa::kernels

#endif  // RSA_KERNELS_DENSE_H_
