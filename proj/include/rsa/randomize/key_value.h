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

#ifndef RSA_RANDOMIZE_KEY_VALUE_H_
#define RSA_RANDOMIZE_KEY_VALUE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsa::randomize {

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v) const { return v >= min && v <= max; }
  friend bool operator==(const Range&, const Range&) = default;
};

// Plain-text configuration:
//
//   line  := key "=" value | "#" comment | blank
//   key   := [A-Za-z0-9_.]+
//   value := rest of the line, surrounding whitespace trimmed
//
// Ranges are written "min max" (or "min, max"); lists are comma separated.
// Later assignments to the same key override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig read_file(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  void set(std::string key, std::string value);
  std::vector<std::string> keys() const;

  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_int(std::string_view key) const;
  std::optional<Range> get_range(std::string_view key) const;
  std::optional<std::vector<std::string>> get_list(std::string_view key) const;

  // Canonical "key = value" text, sorted by key. Stable for hashing.
  std::string canonical_text() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  const Entry* find(std::string_view key) const;

  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace rsa::randomize

#endif  // RSA_RANDOMIZE_KEY_VALUE_H_
