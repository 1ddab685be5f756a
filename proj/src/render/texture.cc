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

#include "rsa/render/texture.h"

#include <algorithm>
#include <cmath>

#include "rsa/common/error.h"
#include "rsa/randomize/rng.h"
#include "rsa/render/image.h"

namespace rsa::render {
namespace {

constexpr int kSize = kernels::kTextureSize;
constexpr std::uint64_t kTextureSeedSalt = 0x5445585455524553ull;

struct Rgb {
  double r, g, b;
};

Rgb random_color(randomize::Pcg32& rng) {
  return {static_cast<double>(rng.bounded(256)), static_cast<double>(rng.bounded(256)),
          static_cast<double>(rng.bounded(256))};
}

std::uint32_t mix_color(const Rgb& a, const Rgb& b, double t) {
  const auto channel = [t](double x, double y) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(x + (y - x) * t), 0L, 255L));
  };
  return pack_rgb(channel(a.r, b.r), channel(a.g, b.g), channel(a.b, b.b));
}

Texture blank() {
  Texture t;
  t.texels.assign(static_cast<std::size_t>(kSize) * kSize, 0);
  return t;
}

Texture checker(randomize::Pcg32& rng) {
  const Rgb a = random_color(rng);
  const Rgb b = random_color(rng);
  const int cell = kSize / (2 << rng.bounded(4));
  Texture t = blank();
  for (int v = 0; v < kSize; ++v) {
    for (int u = 0; u < kSize; ++u) {
      const bool odd = ((u / cell) + (v / cell)) % 2 == 1;
      t.texels[static_cast<std::size_t>(v * kSize + u)] = mix_color(a, b, odd ? 1.0 : 0.0);
    }
  }
  return t;
}

Texture stripes(randomize::Pcg32& rng) {
  const Rgb a = random_color(rng);
  const Rgb b = random_color(rng);
  const int period = 8 << rng.bounded(4);
  const std::uint32_t orientation = rng.bounded(3);
  Texture t = blank();
  for (int v = 0; v < kSize; ++v) {
    for (int u = 0; u < kSize; ++u) {
      const int coord = orientation == 0 ? u : (orientation == 1 ? v : u + v);
      const bool second = (coord % period) >= period / 2;
      t.texels[static_cast<std::size_t>(v * kSize + u)] = mix_color(a, b, second ? 1.0 : 0.0);
    }
  }
  return t;
}

// Two octaves of smoothed value noise on wrapping lattices, so the result
// tiles seamlessly.
Texture noise(randomize::Pcg32& rng) {
  const Rgb a = random_color(rng);
  const Rgb b = random_color(rng);
  const int base = 4 << rng.bounded(3);
  const auto lattice = [&rng](int n) {
    std::vector<double> values(static_cast<std::size_t>(n) * n);
    for (double& x : values) x = rng.uniform01();
    return values;
  };
  const int fine = 2 * base;
  const std::vector<double> coarse_grid = lattice(base);
  const std::vector<double> fine_grid = lattice(fine);
  const auto sample = [](const std::vector<double>& grid, int n, int u, int v) {
    const double x = static_cast<double>(u) * n / kSize;
    const double y = static_cast<double>(v) * n / kSize;
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const double fx = x - x0;
    const double fy = y - y0;
    const double sx = fx * fx * (3 - 2 * fx);
    const double sy = fy * fy * (3 - 2 * fy);
    const auto g = [&](int i, int j) {
      return grid[static_cast<std::size_t>((j % n) * n + (i % n))];
    };
    const double top = g(x0, y0) + (g(x0 + 1, y0) - g(x0, y0)) * sx;
    const double bottom = g(x0, y0 + 1) + (g(x0 + 1, y0 + 1) - g(x0, y0 + 1)) * sx;
    return top + (bottom - top) * sy;
  };
  Texture t = blank();
  for (int v = 0; v < kSize; ++v) {
    for (int u = 0; u < kSize; ++u) {
      const double value =
          (2.0 * sample(coarse_grid, base, u, v) + sample(fine_grid, fine, u, v)) / 3.0;
      t.texels[static_cast<std::size_t>(v * kSize + u)] = mix_color(a, b, value);
    }
  }
  return t;
}

Texture from_image(const Image& image) {
  if (image.width <= 0 || image.height <= 0) throw IoError("empty texture image");
  Texture t = blank();
  for (int v = 0; v < kSize; ++v) {
    const int sy = static_cast<int>(static_cast<long>(v) * image.height / kSize);
    const std::uint8_t* row = image.row(sy);
    for (int u = 0; u < kSize; ++u) {
      const int sx = static_cast<int>(static_cast<long>(u) * image.width / kSize);
      const std::uint8_t* p = row + 3 * sx;
      t.texels[static_cast<std::size_t>(v * kSize + u)] = pack_rgb(p[0], p[1], p[2]);
    }
  }
  return t;
}

}  // namespace

Texture solid_texture(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Texture t;
  t.texels.assign(static_cast<std::size_t>(kSize) * kSize, pack_rgb(r, g, b));
  return t;
}

Texture make_texture(const randomize::TextureRef& ref) {
  using Kind = randomize::TextureRef::Kind;
  switch (ref.kind) {
    case Kind::kSolid:
      return solid_texture(static_cast<std::uint8_t>(ref.value >> 16),
                           static_cast<std::uint8_t>(ref.value >> 8),
                           static_cast<std::uint8_t>(ref.value));
    case Kind::kFile:
      return from_image(read_image(ref.path, /*force_rgb=*/true));
    default:
      break;
  }
  randomize::Pcg32 rng(randomize::mix64(kTextureSeedSalt ^ ref.value),
                       static_cast<std::uint64_t>(ref.kind));
  switch (ref.kind) {
    case Kind::kChecker:
      return checker(rng);
    case Kind::kStripes:
      return stripes(rng);
    default:
      return noise(rng);
  }
}

Texture load_texture(const std::string& ref) {
  return make_texture(randomize::parse_texture_ref(ref));
}

std::shared_ptr<const Texture> TextureCache::get(const std::string& ref) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = entries_.find(ref); it != entries_.end()) return it->second;
  }
  auto texture = std::make_shared<const Texture>(load_texture(ref));
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.emplace(ref, std::move(texture)).first->second;
}

}  // namespace rsa::render
