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


#include "rsa/learn/weights.h"

#include <bit>
#include <cstring>
#include <string>

#include "rsa/common/error.h"
#include "rsa/render/image.h"

namespace rsa::learn {
namespace {

constexpr char kMagic[4] = {'R', 'S', 'A', 'W'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  const std::uint8_t* take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw ParseError("weight file is truncated", 0);
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const std::uint8_t* p = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
  }
  double f64() {
    const std::uint8_t* p = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_weights(const ClassifierModel& model) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(model.input_size()));
  put_u32(out, static_cast<std::uint32_t>(model.trunk.widths()[1]));
  put_u32(out, static_cast<std::uint32_t>(model.latent_size()));
  put_u32(out, static_cast<std::uint32_t>(model.class_count()));
  for (const std::string& c : model.classes) {
    put_u32(out, static_cast<std::uint32_t>(c.size()));
    out.insert(out.end(), c.begin(), c.end());
  }
  for (double v : model.trunk.params) put_f64(out, v);
  for (double v : model.head.params) put_f64(out, v);
  return out;
}

ClassifierModel decode_weights(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  if (std::memcmp(r.take(4), kMagic, 4) != 0) throw ParseError("not an RSAW weight file", 0);
  if (const std::uint32_t v = r.u32(); v != kVersion) {
    throw ParseError("unsupported weight file version " + std::to_string(v), 0);
  }
  const std::size_t input = r.u32();
  const std::size_t hidden = r.u32();
  const std::size_t latent = r.u32();
  const std::size_t classes = r.u32();
  if (input == 0 || hidden == 0 || latent == 0 || classes < 2 || classes > 100000) {
    throw ParseError("weight file has invalid dimensions", 0);
  }
  ClassifierModel m;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::uint32_t n = r.u32();
    const std::uint8_t* p = r.take(n);
    m.classes.emplace_back(reinterpret_cast<const char*>(p), n);
  }
  m.trunk = Mlp({input, hidden, latent}, true);
  m.head = Mlp({latent, classes}, false);
  for (double& v : m.trunk.params) v = r.f64();
  for (double& v : m.head.params) v = r.f64();
  if (!r.done()) throw ParseError("weight file has trailing bytes", 0);
  return m;
}

void save_weights(const std::filesystem::path& path, const ClassifierModel& model) {
  render::write_bytes(path, encode_weights(model));
}

ClassifierModel load_weights(const std::filesystem::path& path) {
  return decode_weights(render::read_bytes(path));
}

}  // namespace rsa::learn
