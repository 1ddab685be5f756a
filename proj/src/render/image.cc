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

#include "rsa/render/image.h"

#include <png.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "rsa/common/error.h"

namespace rsa::render {
namespace {

struct PngReadBuffer {
  const std::vector<std::uint8_t>* bytes;
  std::size_t offset;
};

void png_error_fn(png_structp, png_const_charp message) { throw IoError(message); }
void png_warning_fn(png_structp, png_const_charp) {}

void png_write_fn(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_fn(png_structp) {}

void png_read_fn(png_structp png, png_bytep data, png_size_t length) {
  auto* in = static_cast<PngReadBuffer*>(png_get_io_ptr(png));
  if (in->offset + length > in->bytes->size()) throw IoError("truncated PNG data");
  std::memcpy(data, in->bytes->data() + in->offset, length);
  in->offset += length;
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Image to_rgb(const Image& image) {
  if (image.channels == 3) return image;
  Image out(image.width, image.height, 3);
  for (std::size_t i = 0; i < static_cast<std::size_t>(image.width) * image.height; ++i) {
    out.pixels[3 * i] = out.pixels[3 * i + 1] = out.pixels[3 * i + 2] = image.pixels[i];
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw InvalidArgument("PNG encoder supports 1 or 3 channels");
  }
  std::vector<std::uint8_t> out;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    if (!info) throw IoError("png_create_info_struct failed");
    png_set_write_fn(png, &out, png_write_fn, png_flush_fn);
    png_set_compression_level(png, 6);
    png_set_filter(png, 0, PNG_FILTER_SUB);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8,
                 image.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < image.height; ++y) {
      png_write_row(png, const_cast<png_bytep>(image.row(y)));
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw IoError("not a PNG file");
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warning_fn);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  Image image;
  try {
    if (!info) throw IoError("png_create_info_struct failed");
    PngReadBuffer buffer{&bytes, 0};
    png_set_read_fn(png, &buffer, png_read_fn);
    png_read_info(png, info);
    png_set_strip_16(png);
    png_set_packing(png);
    png_set_expand(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) throw IoError("unsupported PNG channel layout");
    image = Image(static_cast<int>(png_get_image_width(png, info)),
                  static_cast<int>(png_get_image_height(png, info)), channels);
    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
    for (int y = 0; y < image.height; ++y) rows[static_cast<std::size_t>(y)] = image.row(y);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

std::vector<std::uint8_t> encode_pnm(const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw InvalidArgument("PNM encoder supports 1 or 3 channels");
  }
  const std::string header = std::string(image.channels == 3 ? "P6" : "P5") + "\n" +
                             std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

Image decode_pnm(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  const auto token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t += static_cast<char>(bytes[pos++]);
    return t;
  };
  const std::string magic = token();
  if (magic != "P6" && magic != "P5") throw IoError("not a binary PPM/PGM file");
  int w = 0;
  int h = 0;
  int maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    throw IoError("malformed PNM header");
  }
  if (w <= 0 || h <= 0 || w > 65536 || h > 65536 || maxval != 255) {
    throw IoError("unsupported PNM dimensions or depth");
  }
  ++pos;  // single whitespace after maxval
  Image image(w, h, magic == "P6" ? 3 : 1);
  if (bytes.size() < pos + image.pixels.size()) throw IoError("truncated PNM data");
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), image.pixels.size(),
              image.pixels.begin());
  return image;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

Image read_image(const std::filesystem::path& path, bool force_rgb) {
  const std::string ext = to_lower(path.extension().string());
  const std::vector<std::uint8_t> bytes = read_bytes(path);
  Image image;
  try {
    if (ext == ".png") {
      image = decode_png(bytes);
    } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
      image = decode_pnm(bytes);
    } else {
      throw IoError("unsupported image extension '" + ext + "'");
    }
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return force_rgb ? to_rgb(image) : image;
}

void write_image(const std::filesystem::path& path, const Image& image) {
  const std::string ext = to_lower(path.extension().string());
  if (ext == ".png") {
    write_bytes(path, encode_png(image));
  } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
    write_bytes(path, encode_pnm(image));
  } else {
    throw IoError("unsupported image extension '" + ext + "'");
  }
}

}  // namespace rsa::render
