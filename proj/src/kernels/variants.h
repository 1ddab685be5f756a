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

#ifndef RSA_SRC_KERNELS_VARIANTS_H_
#define RSA_SRC_KERNELS_VARIANTS_H_

#include "rsa/kernels/dense.h"
#include "rsa/kernels/pixel.h"

#if defined(__x86_64__) && defined(__GNUC__)
#define RSA_HAVE_AVX2_VARIANTS 1
#else
#define RSA_HAVE_AVX2_VARIANTS 0
#endif

namespace rsa::kernels {

const DenseKernels& scalar_dense_kernels();
const PixelKernels& scalar_pixel_kernels();

#if RSA_HAVE_AVX2_VARIANTS
const DenseKernels& avx2_dense_kernels();
const PixelKernels& avx2_pixel_kernels();
#endif

// Beyond this depth a downward ray is treated as hitting the sky, which keeps
// floor texture coordinates inside int32 range.
inline constexpr float kFloorFarPlane = 1000.0f;

}  // namespace rsa::kernels

#endif  // RSA_SRC_KERNELS_VARIANTS_H_
