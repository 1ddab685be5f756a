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

#ifndef RSA_KERNELS_PIXEL_H_
#define RSA_KERNELS_PIXEL_H_

#include <cstddef>
#include <cstdint>

#include "rsa/kernels/dispatch.h"

namespace rsa::kernels {

// Fixed-point luma weights (sum 256). Luma of one pixel is
// 77 R + 150 G + 29 B, an integer in [0, 65280].
inline constexpr std::uint32_t kLumaR = 77;
inline constexpr std::uint32_t kLumaG = 150;
inline constexpr std::uint32_t kLumaB = 29;

// Textures consumed by the background kernel: 256 x 256 texels packed as
// 0x00BBGGRR.
inline constexpr int kTextureSize = 256;

// Everything the background pass needs for one image row. The ray through
// pixel column i is dir(i) = row_dir + ((i + 0.5 - cx) * inv_focal) * right;
// its forward component is 1, so the ray parameter is camera-space depth.
struct BackgroundRow {
  float row_dir[3];
  float right[3];
  float cx;
  float inv_focal;
  float eye[3];
  float near_plane;
  float floor_scale;   // texels per meter on the ground plane
  float floor_shade;   // Lambert factor for the up-facing floor
  const std::uint32_t* floor_texels;
  const std::uint32_t* sky_texels;
};

// Pixel kernels. Integer luma sums are exact, and the float background pass
// performs the same IEEE operations in the same order in every variant, so
// all variants are bit-identical to the scalar reference.
struct PixelKernels {
  // Adds the luma of pixels [bounds[k], bounds[k+1]) of an interleaved RGB8
  // row into acc[k], for k in [0, blocks).
  void (*luma_block_sums)(const std::uint8_t* rgb, const int* bounds,
                          int blocks, std::uint64_t* acc);
  // Shades `width` pixels of sky and floor. Depth is +inf for sky.
  void (*background_row)(const BackgroundRow& row, int width,
                         std::uint8_t* rgb_out, float* depth_out);
};

const PixelKernels& pixel_kernels(Isa isa);
inline const PixelKernels& pixel_kernels() {
  return pixel_kernels(active_isa());
}

}  // namespace rsa::kernels

#endif  // RSA_KERNELS_PIXEL_H_
