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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "rsa/kernels/dense.h"
#include "rsa/kernels/dispatch.h"
#include "rsa/kernels/pixel.h"
#include "rsa/randomize/rng.h"

namespace rsa::kernels {
namespace {

using randomize::Pcg32;

std::vector<double> random_vector(Pcg32& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

// Every variant the host can run; the scalar table is always first.
std::vector<Isa> runnable_isas() {
  std::vector<Isa> out{Isa::kScalar};
  if (isa_available(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  return out;
}

TEST(DispatchTest, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::kScalar));
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
  EXPECT_EQ(isa_name(Isa::kAvx2), "avx2");
  EXPECT_TRUE(isa_available(active_isa()));
}

TEST(DenseKernelsTest, DotMatchesLongDoubleOracle) {
  Pcg32 rng(1, 2);
  for (Isa isa : runnable_isas()) {
    const DenseKernels& k = dense_kernels(isa);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 65u, 1000u}) {
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      long double oracle = 0.0L;
      for (std::size_t i = 0; i < n; ++i) oracle += static_cast<long double>(a[i]) * b[i];
      EXPECT_NEAR(k.dot(a.data(), b.data(), n), static_cast<double>(oracle),
                  1e-12 * (1.0 + static_cast<double>(n)))
          << isa_name(isa) << " n=" << n;
    }
  }
}

TEST(DenseKernelsTest, VariantsAgreeOnGemvFamily) {
  Pcg32 rng(3, 4);
  const DenseKernels& ref = dense_kernels(Isa::kScalar);
  for (Isa isa : runnable_isas()) {
    const DenseKernels& k = dense_kernels(isa);
    for (std::size_t rows : {1u, 5u, 32u}) {
      for (std::size_t cols : {1u, 6u, 19u, 192u}) {
        const auto a = random_vector(rng, rows * cols);
        const auto x = random_vector(rng, cols);
        const auto bias = random_vector(rng, rows);
        const auto xr = random_vector(rng, rows);

        std::vector<double> y_ref(rows), y(rows);
        ref.gemv(a.data(), rows, cols, x.data(), bias.data(), y_ref.data());
        k.gemv(a.data(), rows, cols, x.data(), bias.data(), y.data());
        for (std::size_t r = 0; r < rows; ++r) {
          double oracle = bias[r];
          for (std::size_t c = 0; c < cols; ++c) oracle += a[r * cols + c] * x[c];
          EXPECT_NEAR(y[r], oracle, 1e-11);
          EXPECT_NEAR(y_ref[r], oracle, 1e-11);
        }

        std::vector<double> t_ref(cols, 0.5), t(cols, 0.5);
        ref.gemv_t_acc(a.data(), rows, cols, xr.data(), t_ref.data());
        k.gemv_t_acc(a.data(), rows, cols, xr.data(), t.data());
        for (std::size_t c = 0; c < cols; ++c) {
          double oracle = 0.5;
          for (std::size_t r = 0; r < rows; ++r) oracle += a[r * cols + c] * xr[r];
          EXPECT_NEAR(t[c], oracle, 1e-11);
          EXPECT_NEAR(t_ref[c], oracle, 1e-11);
        }

        std::vector<double> g_ref = a, g = a;
        ref.ger(0.25, xr.data(), rows, x.data(), cols, g_ref.data());
        k.ger(0.25, xr.data(), rows, x.data(), cols, g.data());
        for (std::size_t i = 0; i < rows * cols; ++i) {
          EXPECT_NEAR(g[i], a[i] + 0.25 * xr[i / cols] * x[i % cols], 1e-12);
          EXPECT_NEAR(g_ref[i], g[i], 1e-12);
        }

        std::vector<double> p_ref = x, p = x;
        ref.axpy(-1.5, x.data(), p_ref.data(), cols);
        k.axpy(-1.5, x.data(), p.data(), cols);
        for (std::size_t c = 0; c < cols; ++c) EXPECT_NEAR(p[c], -0.5 * x[c], 1e-12);
      }
    }
  }
}

TEST(DenseKernelsTest, NullBiasMeansZero) {
  const double a[] = {1, 2, 3, 4};
  const double x[] = {1, -1};
  for (Isa isa : runnable_isas()) {
    double y[2];
    dense_kernels(isa).gemv(a, 2, 2, x, nullptr, y);
    EXPECT_EQ(y[0], -1.0);
    EXPECT_EQ(y[1], -1.0);
  }
}

TEST(PixelKernelsTest, LumaSumsExactAgainstOracle) {
  Pcg32 rng(5, 6);
  for (Isa isa : runnable_isas()) {
    const PixelKernels& k = pixel_kernels(isa);
    for (int width : {1, 7, 8, 9, 33, 640}) {
      std::vector<std::uint8_t> rgb(static_cast<std::size_t>(3 * width));
      for (auto& c : rgb) c = static_cast<std::uint8_t>(rng.bounded(256));
      // Random monotone block bounds covering [0, width).
      std::vector<int> bounds{0};
      while (bounds.back() < width) {
        bounds.push_back(std::min(width, bounds.back() + 1 + static_cast<int>(rng.bounded(50))));
      }
      const int blocks = static_cast<int>(bounds.size()) - 1;
      std::vector<std::uint64_t> acc(static_cast<std::size_t>(blocks), 7);
      k.luma_block_sums(rgb.data(), bounds.data(), blocks, acc.data());
      for (int b = 0; b < blocks; ++b) {
        std::uint64_t oracle = 7;
        for (int i = bounds[b]; i < bounds[b + 1]; ++i) {
          oracle += 77u * rgb[3 * i] + 150u * rgb[3 * i + 1] + 29u * rgb[3 * i + 2];
        }
        EXPECT_EQ(acc[static_cast<std::size_t>(b)], oracle) << isa_name(isa) << " w=" << width;
      }
    }
  }
}

TEST(PixelKernelsTest, LumaOfWhiteIs65280) {
  const std::uint8_t white[3] = {255, 255, 255};
  const int bounds[2] = {0, 1};
  for (Isa isa : runnable_isas()) {
    std::uint64_t acc = 0;
    pixel_kernels(isa).luma_block_sums(white, bounds, 1, &acc);
    EXPECT_EQ(acc, 65280u);
  }
}

TEST(PixelKernelsTest, BackgroundRowBitIdenticalAcrossVariants) {
  if (!isa_available(Isa::kAvx2)) GTEST_SKIP() << "no AVX2 on this host";
  Pcg32 rng(7, 8);
  std::vector<std::uint32_t> floor(kTextureSize * kTextureSize), sky(floor.size());
  for (auto& t : floor) t = rng.next_u32() & 0xFFFFFF;
  for (auto& t : sky) t = rng.next_u32() & 0xFFFFFF;
  const PixelKernels& ref = pixel_kernels(Isa::kScalar);
  const PixelKernels& simd = pixel_kernels(Isa::kAvx2);
  for (int trial = 0; trial < 200; ++trial) {
    BackgroundRow row{};
    for (int c = 0; c < 3; ++c) {
      row.row_dir[c] = static_cast<float>(rng.uniform(-1.0, 1.0));
      row.right[c] = static_cast<float>(rng.uniform(-1.0, 1.0));
    }
    row.eye[0] = static_cast<float>(rng.uniform(-5, 5));
    row.eye[1] = static_cast<float>(rng.uniform(0.1, 5));
    row.eye[2] = static_cast<float>(rng.uniform(-5, 5));
    const int width = trial < 100 ? 1 + static_cast<int>(rng.bounded(40)) : 640;
    row.cx = 0.5f * static_cast<float>(width);
    row.inv_focal = static_cast<float>(rng.uniform(0.001, 0.05));
    row.near_plane = 0.1f;
    row.floor_scale = static_cast<float>(rng.uniform(1, 100));
    row.floor_shade = static_cast<float>(rng.uniform(0.2, 1.3));
    row.floor_texels = floor.data();
    row.sky_texels = sky.data();
    std::vector<std::uint8_t> rgb_a(3 * width), rgb_b(3 * width);
    std::vector<float> depth_a(width), depth_b(width);
    ref.background_row(row, width, rgb_a.data(), depth_a.data());
    simd.background_row(row, width, rgb_b.data(), depth_b.data());
    ASSERT_EQ(rgb_a, rgb_b) << "trial " << trial;
    ASSERT_EQ(0, std::memcmp(depth_a.data(), depth_b.data(), depth_a.size() * sizeof(float)))
        << "trial " << trial;
  }
}

TEST(PixelKernelsTest, BackgroundRowFloorHitMatchesHandComputation) {
  // Eye 2 m above the ground, looking straight down: the centre pixel hits
  // the floor at depth 2 directly below the eye.
  std::vector<std::uint32_t> floor(kTextureSize * kTextureSize, 0x00102030);
  std::vector<std::uint32_t> sky(floor.size(), 0x00FFFFFF);
  BackgroundRow row{};
  row.row_dir[1] = -1.0f;
  row.right[0] = 1.0f;
  row.cx = 0.5f;
  row.inv_focal = 0.01f;
  row.eye[1] = 2.0f;
  row.near_plane = 0.1f;
  row.floor_scale = 10.0f;
  row.floor_shade = 1.0f;
  row.floor_texels = floor.data();
  row.sky_texels = sky.data();
  for (Isa isa : runnable_isas()) {
    std::uint8_t rgb[3];
    float depth = 0;
    pixel_kernels(isa).background_row(row, 1, rgb, &depth);
    EXPECT_EQ(depth, 2.0f);
    EXPECT_EQ(rgb[0], 0x30);
    EXPECT_EQ(rgb[1], 0x20);
    EXPECT_EQ(rgb[2], 0x10);
  }
}

TEST(PixelKernelsTest, SkyDepthIsInfinite) {
  std::vector<std::uint32_t> tex(kTextureSize * kTextureSize, 0x00abcdef);
  BackgroundRow row{};
  row.row_dir[1] = 1.0f;
  row.right[0] = 1.0f;
  row.cx = 4.0f;
  row.inv_focal = 0.01f;
  row.eye[1] = 1.0f;
  row.near_plane = 0.1f;
  row.floor_scale = 1.0f;
  row.floor_shade = 1.0f;
  row.floor_texels = tex.data();
  row.sky_texels = tex.data();
  for (Isa isa : runnable_isas()) {
    std::uint8_t rgb[24];
    float depth[8];
    pixel_kernels(isa).background_row(row, 8, rgb, depth);
    for (float d : depth) EXPECT_EQ(d, std::numeric_limits<float>::infinity());
  }
}

}  // namespace
}  // namespace rsa::kernels
