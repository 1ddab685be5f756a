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


#ifndef RSA_LEARN_WEIGHTS_H_
#define RSA_LEARN_WEIGHTS_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rsa/learn/model.h"

namespace rsa::learn {

// Classifier weight file, all integers and floats little-endian:
//
//   "RSAW"                      4-byte magic
//   u32 version (1)
//   u32 input, hidden, latent, classes
//   classes x { u32 byte length, UTF-8 name }
//   f64 trunk parameters, then f64 head parameters (Mlp layout)
//
// Throws ParseError on a malformed or truncated file.
std::vector<std::uint8_t> encode_weights(const ClassifierModel& model);
ClassifierModel decode_weights(const std::vector<std::uint8_t>& bytes);

void save_weights(const std::filesystem::path& path, const ClassifierModel& model);
ClassifierModel load_weights(const std::filesystem::path& path);

}  // namespace rsa::learn

#endif  // RSA_LEARN_WEIGHTS_H_
