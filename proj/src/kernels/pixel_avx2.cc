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

// AVX2 pixel kernels. Each lane performs exactly the scalar reference's float
// operations, so outputs match it bit for bit (see the equivalence tests).

#include "kernels/variants.h"

#if RSA_HAVE_AVX2_VARIANTS

#include <immintrin.h>

#include <cmath>
#include <limits>

#define RSA_AVX2 __attribute__((target("avx2")))

namespace rsa::kernels {
namespace {

RSA_AVX2 void luma_block_sums(const std::uint8_t* rgb, const int* bounds,
                              int blocks, std::uint64_t* acc) {
  const int row_end = bounds[blocks];
  const __m256i byte = _mm256_set1_epi32(0xFF);
  const __m256i wr = _mm256_set1_epi32(kLumaR);
  const __m256i wg = _mm256_set1_epi32(kLumaG);
  const __m256i wb = _mm256_set1_epi32(kLumaB);
  const __m256i stride = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
  for (int k = 0; k < blocks; ++k) {
    int i = bounds[k];
    const int end = bounds[k + 1];
    std::uint64_t sum = 0;
    // Each gather reads 4 bytes per pixel; stop while the last lane is still
    // followed by at least one pixel so no read leaves the row.
    __m256i lane_sum = _mm256_setzero_si256();
    int pending = 0;
    for (; i + 8 <= end && i + 8 < row_end; i += 8) {
      const __m256i px = _mm256_i32gather_epi32(
          reinterpret_cast<const int*>(rgb + 3 * i), stride, 1);
      const __m256i r = _mm256_and_si256(px, byte);
      const __m256i g = _mm256_and_si256(_mm256_srli_epi32(px, 8), byte);
      const __m256i b = _mm256_and_si256(_mm256_srli_epi32(px, 16), byte);
      const __m256i y = _mm256_add_epi32(
          _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg)),
          _mm256_mullo_epi32(b, wb));
      lane_sum = _mm256_add_epi32(lane_sum, y);
      // Lanes grow by at most 65280 per step; flush before uint32 overflow.
      if (++pending == 4096) {
        pending = 0;
        alignas(32) std::uint32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), lane_sum);
        for (std::uint32_t v : lanes) sum += v;
        lane_sum = _mm256_setzero_si256();
      }
    }
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), lane_sum);
    for (std::uint32_t v : lanes) sum += v;
    for (; i < end; ++i) {
      const std::uint8_t* p = rgb + 3 * i;
      sum += kLumaR * p[0] + kLumaG * p[1] + kLumaB * p[2];
    }
    acc[k] += sum;
  }
}

RSA_AVX2 inline __m256i shade_channel(__m256i c, __m256 shade) {
  const __m256 v = _mm256_add_ps(_mm256_mul_ps(_mm256_cvtepi32_ps(c), shade),
                                 _mm256_set1_ps(0.5f));
  return _mm256_min_epi32(_mm256_cvttps_epi32(v), _mm256_set1_epi32(255));
}

RSA_AVX2 void background_row(const BackgroundRow& row, int width,
                             std::uint8_t* rgb_out, float* depth_out) {
  constexpr int kMask = kTextureSize - 1;
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 cx = _mm256_set1_ps(row.cx);
  const __m256 inv_focal = _mm256_set1_ps(row.inv_focal);
  const __m256 rd0 = _mm256_set1_ps(row.row_dir[0]);
  const __m256 rd1 = _mm256_set1_ps(row.row_dir[1]);
  const __m256 rd2 = _mm256_set1_ps(row.row_dir[2]);
  const __m256 r0 = _mm256_set1_ps(row.right[0]);
  const __m256 r1 = _mm256_set1_ps(row.right[1]);
  const __m256 r2 = _mm256_set1_ps(row.right[2]);
  const __m256 neg_eye_y = _mm256_set1_ps(-row.eye[1]);
  const __m256 eye_x = _mm256_set1_ps(row.eye[0]);
  const __m256 eye_z = _mm256_set1_ps(row.eye[2]);
  const __m256 near_plane = _mm256_set1_ps(row.near_plane);
  const __m256 far_plane = _mm256_set1_ps(kFloorFarPlane);
  const __m256 floor_scale = _mm256_set1_ps(row.floor_scale);
  const __m256 floor_shade = _mm256_set1_ps(row.floor_shade);
  const __m256 zero = _mm256_setzero_ps();
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 sky_scale = _mm256_set1_ps(128.0f);
  const __m256 abs_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7FFFFFFF));
  const __m256 inf = _mm256_set1_ps(std::numeric_limits<float>::infinity());
  const __m256i tex_mask = _mm256_set1_epi32(kMask);
  const __m256i byte = _mm256_set1_epi32(0xFF);
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  int i = 0;
  for (; i + 8 <= width; i += 8) {
    const __m256 fi = _mm256_cvtepi32_ps(_mm256_add_epi32(_mm256_set1_epi32(i), lane));
    const __m256 xi = _mm256_mul_ps(_mm256_sub_ps(_mm256_add_ps(fi, half), cx),
                                    inv_focal);
    const __m256 dx = _mm256_add_ps(rd0, _mm256_mul_ps(xi, r0));
    const __m256 dy = _mm256_add_ps(rd1, _mm256_mul_ps(xi, r1));
    const __m256 dz = _mm256_add_ps(rd2, _mm256_mul_ps(xi, r2));

    const __m256 t = _mm256_div_ps(neg_eye_y, dy);
    const __m256 on_floor = _mm256_and_ps(
        _mm256_cmp_ps(dy, zero, _CMP_LT_OQ),
        _mm256_and_ps(_mm256_cmp_ps(t, near_plane, _CMP_GT_OQ),
                      _mm256_cmp_ps(t, far_plane, _CMP_LT_OQ)));
    const __m256i floor_lanes = _mm256_castps_si256(on_floor);

    // Floor texel index; non-floor lanes are forced to index 0 before the
    // gather so they never read garbage coordinates.
    const __m256 px = _mm256_add_ps(eye_x, _mm256_mul_ps(t, dx));
    const __m256 pz = _mm256_add_ps(eye_z, _mm256_mul_ps(t, dz));
    const __m256 fx = _mm256_floor_ps(_mm256_mul_ps(px, floor_scale));
    const __m256 fz = _mm256_floor_ps(_mm256_mul_ps(pz, floor_scale));
    const __m256 fx_safe = _mm256_and_ps(fx, on_floor);
    const __m256 fz_safe = _mm256_and_ps(fz, on_floor);
    const __m256i ix = _mm256_and_si256(_mm256_cvttps_epi32(fx_safe), tex_mask);
    const __m256i iz = _mm256_and_si256(_mm256_cvttps_epi32(fz_safe), tex_mask);
    const __m256i floor_idx = _mm256_add_epi32(_mm256_slli_epi32(iz, 8), ix);
    const __m256i floor_texel = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(row.floor_texels), floor_idx, 4);

    const __m256 s = _mm256_add_ps(
        _mm256_add_ps(_mm256_and_ps(dx, abs_mask), _mm256_and_ps(dy, abs_mask)),
        _mm256_and_ps(dz, abs_mask));
    const __m256 u = _mm256_div_ps(dx, s);
    const __m256 v = _mm256_div_ps(dz, s);
    __m256i iu = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_add_ps(u, one), sky_scale));
    __m256i iv = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_add_ps(v, one), sky_scale));
    iu = _mm256_max_epi32(_mm256_min_epi32(iu, tex_mask), _mm256_setzero_si256());
    iv = _mm256_max_epi32(_mm256_min_epi32(iv, tex_mask), _mm256_setzero_si256());
    const __m256i sky_texel = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(row.sky_texels),
        _mm256_add_epi32(_mm256_slli_epi32(iv, 8), iu), 4);

    const __m256i fr = shade_channel(_mm256_and_si256(floor_texel, byte), floor_shade);
    const __m256i fg = shade_channel(
        _mm256_and_si256(_mm256_srli_epi32(floor_texel, 8), byte), floor_shade);
    const __m256i fb = shade_channel(
        _mm256_and_si256(_mm256_srli_epi32(floor_texel, 16), byte), floor_shade);
    const __m256i shaded_floor = _mm256_or_si256(
        fr, _mm256_or_si256(_mm256_slli_epi32(fg, 8), _mm256_slli_epi32(fb, 16)));
    const __m256i texel = _mm256_blendv_epi8(sky_texel, shaded_floor, floor_lanes);
    const __m256 depth = _mm256_blendv_ps(inf, t, on_floor);

    alignas(32) std::uint32_t packed[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(packed), texel);
    _mm256_storeu_ps(depth_out + i, depth);
    std::uint8_t* out = rgb_out + 3 * i;
    for (int k = 0; k < 8; ++k) {
      out[3 * k + 0] = static_cast<std::uint8_t>(packed[k] & 0xFF);
      out[3 * k + 1] = static_cast<std::uint8_t>((packed[k] >> 8) & 0xFF);
      out[3 * k + 2] = static_cast<std::uint8_t>((packed[k] >> 16) & 0xFF);
    }
  }
  if (i < width) {
    BackgroundRow tail = row;
    tail.cx = row.cx - static_cast<float>(i);
    // cx is a multiple of 0.5 for integer widths, so the shifted column
    // arithmetic stays exact and the tail matches the vector lanes.
    scalar_pixel_kernels().background_row(tail, width - i, rgb_out + 3 * i,
                                          depth_out + i);
  }
}

}  // namespace

const PixelKernels& avx2_pixel_kernels() {
  static const PixelKernels table{luma_block_sums, background_row};
  return table;
}

}  // namespace rsa::kernels

#endif  // RSA_HAVE_AVX2_VARIANTS
