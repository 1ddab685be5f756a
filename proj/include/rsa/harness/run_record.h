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


#ifndef RSA_HARNESS_RUN_RECORD_H_
#define RSA_HARNESS_RUN_RECORD_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace rsa::harness {

const char* code_version();

// FNV-1a over the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

// Writes {command, version, seed, config_hash, config, outputs} as JSON.
void write_run_record(const std::filesystem::path& path, const std::string& command,
                      const nlohmann::json& config, std::uint64_t seed,
                      const nlohmann::json& outputs);

}  // namespace rsa::harness

#endif  // RSA_HARNESS_RUN_RECORD_H_
