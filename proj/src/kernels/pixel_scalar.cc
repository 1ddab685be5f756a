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

#include <cmath>
#include <limits>

#include "kernels/variants.h"

namespace rsa::kernels {
namespace {

void luma_block_sums(const std::uint8_t* rgb, const int* bounds, int blocks,
                     std::uint64_t* acc) {
  for (int k = 0; k < blocks; ++k) {
    std::uint64_t sum = 0;
    for (int i = bounds[k]; i < bounds[k + 1]; ++i) {
      const std::uint8_t* p = rgb + 3 * i;
      sum += kLumaR * p[0] + kLumaG * p[1] + kLumaB * p[2];
    }
    acc[k] += sum;
  }
}

inline std::uint8_t shade_channel(std::uint32_t c, float shade) {
  const int v = static_cast<int>(static_cast<float>(c) * shade + 0.5f);
  return static_cast<std::uint8_t>(v > 255 ? 255 : v);
}

void background_row(const BackgroundRow& row, int width, std::uint8_t* rgb_out,
                    float* depth_out) {
  constexpr int kMask = kTextureSize - 1;
  for (int i = 0; i < width; ++i) {
    const float xi = (static_cast<float>(i) + 0.5f - row.cx) * row.inv_focal;
    const float dx = row.row_dir[0] + xi * row.right[0];
    const float dy = row.row_dir[1] + xi * row.right[1];
    const float dz = row.row_dir[2] + xi * row.right[2];
    std::uint8_t* out = rgb_out + 3 * i;
    bool on_floor = false;
    float t = 0.0f;
    if (dy < 0.0f) {
      t = -row.eye[1] / dy;
      on_floor = t > row.near_plane && t < kFloorFarPlane;
    }
    if (on_floor) {
      const float px = row.eye[0] + t * dx;
      const float pz = row.eye[2] + t * dz;
      const int ix = static_cast<int>(std::floor(px * row.floor_scale)) & kMask;
      const int iz = static_cast<int>(std::floor(pz * row.floor_scale)) & kMask;
      const std::uint32_t texel = row.floor_texels[iz * kTextureSize + ix];
      out[0] = shade_channel(texel & 0xFF, row.floor_shade);
      out[1] = shade_channel((texel >> 8) & 0xFF, row.floor_shade);
      out[2] = shade_channel((texel >> 16) & 0xFF, row.floor_shade);
      depth_out[i] = t;
    } else {
      const float s = std::fabs(dx) + std::fabs(dy) + std::fabs(dz);
      const float u = dx / s;
      const float v = dz / s;
      int iu = static_cast<int>((u + 1.0f) * 128.0f);
      int iv = static_cast<int>((v + 1.0f) * 128.0f);
      iu = iu > kMask ? kMask : (iu < 0 ? 0 : iu);
      iv = iv > kMask ? kMask : (iv < 0 ? 0 : iv);
      const std::uint32_t texel = row.sky_texels[iv * kTextureSize + iu];
      out[0] = static_cast<std::uint8_t>(texel & 0xFF);
      out[1] = static_cast<std::uint8_t>((texel >> 8) & 0xFF);
      out[2] = static_cast<std::uint8_t>((texel >> 16) & 0xFF);
      depth_out[i] = std::numeric_limits<float>::infinity();
    }
  }
}

}  // namespace

const PixelKernels& scalar_pixel_kernels() {
  static const PixelKernels table{luma_block_sums, background_row};
  return table;
}

const PixelKernels& pixel_kernels(Isa isa) {
#if RSA_HAVE_AVX2_VARIANTS
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) {
    return avx2_pixel_kernels();
  }
#else
  (void)isa;
#endif
  return scalar_pixel_kernels();
}

}  // namespace rsa::kernels
