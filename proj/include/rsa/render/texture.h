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

#ifndef RSA_RENDER_TEXTURE_H_
#define RSA_RENDER_TEXTURE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rsa/kernels/pixel.h"
#include "rsa/randomize/nuisance.h"

namespace rsa::render {

// Square tiling texture of kernels::kTextureSize texels per side, packed
// 0x00BBGGRR, row-major with v as the row.
struct Texture {
  std::vector<std::uint32_t> texels;

  std::uint32_t at(int u, int v) const {
    constexpr int kMask = kernels::kTextureSize - 1;
    return texels[static_cast<std::size_t>((v & kMask) * kernels::kTextureSize + (u & kMask))];
  }
};

inline std::uint32_t pack_rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint32_t>(r) | (static_cast<std::uint32_t>(g) << 8) |
         (static_cast<std::uint32_t>(b) << 16);
}

Texture solid_texture(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Procedural textures depend only on (kind, index). File textures are
// resampled to the texture size with nearest-neighbour lookup.
Texture make_texture(const randomize::TextureRef& ref);
Texture load_texture(const std::string& ref);

// Thread-safe memo of load_texture keyed by reference string.
class TextureCache {
 public:
  std::shared_ptr<const Texture> get(const std::string& ref);

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Texture>> entries_;
};

}  // namespace rsa::render

#endif  // RSA_RENDER_TEXTURE_H_
