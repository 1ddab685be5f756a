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

#include "rsa/motion/positions_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "rsa/common/error.h"

namespace rsa::motion {
namespace {

constexpr std::size_t kMaxFrames = 1'000'000;

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("invalid number '" + std::string(s) + "'", line);
  }
  return v;
}

std::size_t to_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("invalid index '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace

PositionSequence parse_positions(std::string_view text,
                                 const BuiltinTopology& topology) {
  const std::size_t joints = topology.topology.size();
  PositionSequence seq;
  std::vector<std::vector<bool>> seen;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto f = fields(line);
    if (f.empty() || f[0].front() == '#') continue;
    if (!have_header) {
      if (f.size() != 2 || f[0] != "frame_time") {
        throw ParseError("expected header 'frame_time <seconds>'", line_no);
      }
      seq.frame_time = to_double(f[1], line_no);
      if (!(seq.frame_time > 0.0)) throw ParseError("frame_time must be positive", line_no);
      have_header = true;
      continue;
    }
    if (f.size() != 5) {
      throw ParseError("expected 'frame joint x y z', found " +
                           std::to_string(f.size()) + " fields",
                       line_no);
    }
    const std::size_t frame = to_index(f[0], line_no);
    const std::size_t external = to_index(f[1], line_no);
    if (frame >= kMaxFrames) throw ParseError("frame index too large", line_no);
    if (external >= topology.external_order.size()) {
      throw ParseError("joint index " + std::to_string(external) + " out of range for " +
                           topology.name,
                       line_no);
    }
    const std::size_t joint = topology.external_order[external];
    if (frame >= seq.frames.size()) {
      seq.frames.resize(frame + 1, JointPositions(joints, Vec3::Zero()));
      seen.resize(frame + 1, std::vector<bool>(joints, false));
    }
    if (seen[frame][joint]) {
      throw ParseError("frame " + std::to_string(frame) + " lists joint " +
                           std::to_string(external) + " twice",
                       line_no);
    }
    seen[frame][joint] = true;
    seq.frames[frame][joint] =
        Vec3(to_double(f[2], line_no), to_double(f[3], line_no), to_double(f[4], line_no));
  }
  if (!have_header) throw ParseError("missing 'frame_time' header", 0);
  if (seq.frames.empty()) throw ParseError("no position records", 0);
  for (std::size_t fr = 0; fr < seen.size(); ++fr) {
    for (std::size_t j = 0; j < joints; ++j) {
      if (!seen[fr][j]) {
        throw ParseError("frame " + std::to_string(fr) + " is missing joint '" +
                             topology.topology.joint(j).name + "'",
                         0);
      }
    }
  }
  return seq;
}

std::string write_positions(const PositionSequence& sequence,
                            const BuiltinTopology& topology) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "frame_time %.9g\n", sequence.frame_time);
  out += buf;
  for (std::size_t f = 0; f < sequence.frames.size(); ++f) {
    for (std::size_t k = 0; k < topology.external_order.size(); ++k) {
      const Vec3& p = sequence.frames[f][topology.external_order[k]];
      std::snprintf(buf, sizeof(buf), "%zu %zu %.9g %.9g %.9g\n", f, k, p.x(), p.y(),
                    p.z());
      out += buf;
    }
  }
  return out;
}

PositionSequence read_positions_file(const std::filesystem::path& path,
                                     const BuiltinTopology& topology) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_positions(ss.str(), topology);
}

}  // namespace rsa::motion
