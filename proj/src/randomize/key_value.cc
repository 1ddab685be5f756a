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

#include "rsa/randomize/key_value.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rsa/common/error.h"

namespace rsa::randomize {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

double number(std::string_view s, std::string_view key, std::size_t line) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("key '" + std::string(key) + "': invalid number '" +
                         std::string(s) + "'",
                     line);
  }
  return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!valid_key(key)) {
      throw ParseError("invalid key '" + std::string(key) + "'", line_no);
    }
    cfg.entries_[std::string(key)] = {std::string(trim(line.substr(eq + 1))), line_no};
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

const KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool KeyValueConfig::has(std::string_view key) const { return find(key) != nullptr; }

void KeyValueConfig::set(std::string key, std::string value) {
  entries_[std::move(key)] = {std::move(value), 0};
}

std::vector<std::string> KeyValueConfig::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

std::optional<std::string> KeyValueConfig::get_string(std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> KeyValueConfig::get_double(std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return number(e->value, key, e->line);
}

std::optional<long long> KeyValueConfig::get_int(std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  long long v = 0;
  const std::string_view s = e->value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("key '" + std::string(key) + "': invalid integer '" +
                         std::string(s) + "'",
                     e->line);
  }
  return v;
}

std::optional<Range> KeyValueConfig::get_range(std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  std::string v = e->value;
  for (char& c : v) {
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  }
  std::istringstream ss(v);
  std::string a;
  std::string b;
  std::string extra;
  ss >> a >> b;
  if (a.empty()) {
    throw ParseError("key '" + std::string(key) + "': expected 'min max'", e->line);
  }
  if (b.empty()) b = a;
  if (ss >> extra) {
    throw ParseError("key '" + std::string(key) + "': expected 'min max'", e->line);
  }
  Range r{number(a, key, e->line), number(b, key, e->line)};
  if (r.min > r.max) {
    throw ParseError("key '" + std::string(key) + "': min exceeds max", e->line);
  }
  return r;
}

std::optional<std::vector<std::string>> KeyValueConfig::get_list(
    std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  std::vector<std::string> out;
  std::string_view rest = e->value;
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string KeyValueConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, e] : entries_) out += k + " = " + e.value + "\n";
  return out;
}

}  // namespace rsa::randomize
