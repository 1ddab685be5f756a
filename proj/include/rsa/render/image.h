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

#ifndef RSA_RENDER_IMAGE_H_
#define RSA_RENDER_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace rsa::render {

// 8-bit image with `channels` interleaved samples per pixel (1 or 3).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, 0) {}

  std::uint8_t* row(int y) {
    return pixels.data() + static_cast<std::size_t>(y) * width * channels;
  }
  const std::uint8_t* row(int y) const {
    return pixels.data() + static_cast<std::size_t>(y) * width * channels;
  }
  friend bool operator==(const Image&, const Image&) = default;
};

// PNG via libpng with fixed compression settings and no ancillary chunks, so
// identical pixels always encode to identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(const std::vector<std::uint8_t>& bytes);

// Binary PPM (P6) for RGB and PGM (P5) for single-channel images.
std::vector<std::uint8_t> encode_pnm(const Image& image);
Image decode_pnm(const std::vector<std::uint8_t>& bytes);

// Dispatches on the extension (.png, .ppm, .pgm). Loaded images are
// converted to RGB when `force_rgb` is set.
Image read_image(const std::filesystem::path& path, bool force_rgb = false);
void write_image(const std::filesystem::path& path, const Image& image);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace rsa::render

#endif  // RSA_RENDER_IMAGE_H_
