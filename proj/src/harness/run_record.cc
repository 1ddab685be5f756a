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


#include "rsa/harness/run_record.h"

#include <cstdio>
#include <fstream>

#include "rsa/common/error.h"

#ifndef RSA_VERSION
#define RSA_VERSION "unknown"
#endif

namespace rsa::harness {

const char* code_version() { return RSA_VERSION; }

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_run_record(const std::filesystem::path& path, const std::string& command,
                      const nlohmann::json& config, std::uint64_t seed,
                      const nlohmann::json& outputs) {
  const nlohmann::json record{{"command", command},       {"version", code_version()},
                              {"seed", seed},             {"config_hash", config_hash(config)},
                              {"config", config},         {"outputs", outputs}};
  std::ofstream out(path, std::ios::binary);
  out << record.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace rsa::harness
