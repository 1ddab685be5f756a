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

#include "rsa/motion/bvh.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rsa/common/error.h"

namespace rsa::motion {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr std::size_t kMaxDepth = 256;
constexpr std::size_t kMaxJoints = 4096;
constexpr std::size_t kMaxFrames = 10'000'000;

Vec3 axis_vector(Axis axis) {
  switch (axis) {
    case Axis::kX:
      return Vec3::UnitX();
    case Axis::kY:
      return Vec3::UnitY();
    case Axis::kZ:
      return Vec3::UnitZ();
  }
  return Vec3::UnitX();
}

// ----------------------------------------------------------------- lexing

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Whitespace-separated words of one line; braces are always words of their own.
std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    if (line[i] == '{' || line[i] == '}') {
      words.push_back(line.substr(i, 1));
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j]) && line[j] != '{' && line[j] != '}') ++j;
    words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto lower = [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    };
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

double parse_number(std::string_view word, std::size_t line) {
  std::string_view w = word;
  if (!w.empty() && w.front() == '+') w.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
  if (ec != std::errc() || ptr != w.data() + w.size() || w.empty()) {
    throw ParseError("expected a number, found '" + std::string(word) + "'", line);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + std::string(word) + "'", line);
  }
  return value;
}

std::size_t parse_count(std::string_view word, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size() || word.empty()) {
    throw ParseError("expected a non-negative integer, found '" +
                         std::string(word) + "'",
                     line);
  }
  return value;
}

// ----------------------------------------------------------------- hierarchy

enum class Channel { kXpos, kYpos, kZpos, kXrot, kYrot, kZrot };

struct ParsedJoint {
  Joint joint;
  std::vector<Channel> channels;
  std::size_t line;
};

class HierarchyParser {
 public:
  HierarchyParser(const std::vector<std::string_view>& lines) : lines_(lines) {}

  // Parses from the HIERARCHY keyword through the root's closing brace.
  // Returns the index of the line holding the MOTION keyword.
  std::size_t parse(std::vector<ParsedJoint>& out) {
    out_ = &out;
    const Token head = next("HIERARCHY");
    if (!iequals(head.text, "HIERARCHY")) {
      throw ParseError("expected HIERARCHY, found '" + std::string(head.text) + "'",
                       head.line);
    }
    const Token root = next("ROOT");
    if (!iequals(root.text, "ROOT")) {
      throw ParseError("expected ROOT, found '" + std::string(root.text) + "'",
                       root.line);
    }
    parse_joint(root, std::nullopt, 0);
    const Token motion = next("MOTION");
    if (iequals(motion.text, "ROOT")) {
      throw ParseError("multiple ROOT joints are not supported", motion.line);
    }
    if (!iequals(motion.text, "MOTION")) {
      throw ParseError("expected MOTION, found '" + std::string(motion.text) + "'",
                       motion.line);
    }
    if (has_more_on_line()) {
      throw ParseError("unexpected text after MOTION", motion.line);
    }
    return motion.line - 1;
  }

 private:
  bool fill() {
    while (word_ >= words_.size()) {
      if (line_ >= lines_.size()) return false;
      words_ = split_words(lines_[line_]);
      word_ = 0;
      current_line_ = ++line_;
    }
    return true;
  }

  Token next(std::string_view expected) {
    if (!fill()) {
      throw ParseError("unexpected end of input, expected " + std::string(expected),
                       lines_.size());
    }
    return {words_[word_++], current_line_};
  }

  bool has_more_on_line() const { return word_ < words_.size(); }

  // Rest of the current line joined by single spaces.
  std::string rest_of_line() {
    std::string name;
    while (word_ < words_.size() && words_[word_] != "{") {
      if (!name.empty()) name += ' ';
      name += words_[word_++];
    }
    return name;
  }

  void expect(std::string_view word) {
    const Token t = next(word);
    if (t.text != word) {
      throw ParseError("expected '" + std::string(word) + "', found '" +
                           std::string(t.text) + "'",
                       t.line);
    }
  }

  Vec3 parse_offset() {
    Vec3 v;
    for (int k = 0; k < 3; ++k) {
      const Token t = next("an OFFSET component");
      v[k] = parse_number(t.text, t.line);
    }
    return v;
  }

  std::vector<Channel> parse_channels(const Token& keyword, bool is_root) {
    const Token count_token = next("a channel count");
    const std::size_t count = parse_count(count_token.text, count_token.line);
    if (count > 6) throw ParseError("more than 6 channels on one joint", count_token.line);
    std::vector<Channel> channels;
    for (std::size_t k = 0; k < count; ++k) {
      const Token t = next("a channel name");
      Channel c;
      if (iequals(t.text, "Xposition")) {
        c = Channel::kXpos;
      } else if (iequals(t.text, "Yposition")) {
        c = Channel::kYpos;
      } else if (iequals(t.text, "Zposition")) {
        c = Channel::kZpos;
      } else if (iequals(t.text, "Xrotation")) {
        c = Channel::kXrot;
      } else if (iequals(t.text, "Yrotation")) {
        c = Channel::kYrot;
      } else if (iequals(t.text, "Zrotation")) {
        c = Channel::kZrot;
      } else {
        throw ParseError("unknown channel '" + std::string(t.text) + "'", t.line);
      }
      if (std::find(channels.begin(), channels.end(), c) != channels.end()) {
        throw ParseError("duplicate channel '" + std::string(t.text) + "'", t.line);
      }
      if (!is_root && (c == Channel::kXpos || c == Channel::kYpos || c == Channel::kZpos)) {
        throw ParseError("position channels are only supported on the root", t.line);
      }
      channels.push_back(c);
    }
    (void)keyword;
    return channels;
  }

  void parse_joint(const Token& keyword, std::optional<std::size_t> parent,
                   std::size_t depth) {
    if (depth > kMaxDepth) throw ParseError("hierarchy nested too deeply", keyword.line);
    if (out_->size() >= kMaxJoints) throw ParseError("too many joints", keyword.line);
    ParsedJoint pj;
    pj.line = keyword.line;
    pj.joint.parent = parent;
    pj.joint.name = rest_of_line();
    if (pj.joint.name.empty()) throw ParseError("joint without a name", keyword.line);
    expect("{");
    const std::size_t index = out_->size();
    out_->push_back(std::move(pj));

    bool have_offset = false;
    bool have_channels = false;
    while (true) {
      const Token t = next("'}'");
      if (t.text == "}") break;
      if (iequals(t.text, "OFFSET")) {
        if (have_offset) throw ParseError("duplicate OFFSET", t.line);
        (*out_)[index].joint.rest_offset = parse_offset();
        have_offset = true;
      } else if (iequals(t.text, "CHANNELS")) {
        if (have_channels) throw ParseError("duplicate CHANNELS", t.line);
        (*out_)[index].channels = parse_channels(t, !parent.has_value());
        have_channels = true;
      } else if (iequals(t.text, "JOINT")) {
        parse_joint(t, index, depth + 1);
      } else if (iequals(t.text, "End")) {
        const Token site = next("Site");
        if (!iequals(site.text, "Site")) {
          throw ParseError("expected 'Site' after 'End'", site.line);
        }
        parse_end_site(t, index);
      } else {
        throw ParseError("unexpected '" + std::string(t.text) + "' in joint block",
                         t.line);
      }
    }
    if (!have_offset) {
      throw ParseError("joint '" + (*out_)[index].joint.name + "' has no OFFSET",
                       (*out_)[index].line);
    }
    if (!have_channels) {
      throw ParseError("joint '" + (*out_)[index].joint.name + "' has no CHANNELS",
                       (*out_)[index].line);
    }
  }

  void parse_end_site(const Token& keyword, std::size_t parent) {
    if (out_->size() >= kMaxJoints) throw ParseError("too many joints", keyword.line);
    expect("{");
    const Token off = next("OFFSET");
    if (!iequals(off.text, "OFFSET")) {
      throw ParseError("expected OFFSET in End Site", off.line);
    }
    ParsedJoint pj;
    pj.line = keyword.line;
    pj.joint.parent = parent;
    pj.joint.end_site = true;
    pj.joint.rest_offset = parse_offset();
    std::string name = (*out_)[parent].joint.name + "_end";
    const auto taken = [&](const std::string& n) {
      return std::any_of(out_->begin(), out_->end(),
                         [&](const ParsedJoint& j) { return j.joint.name == n; });
    };
    for (int suffix = 2; taken(name); ++suffix) {
      name = (*out_)[parent].joint.name + "_end" + std::to_string(suffix);
    }
    pj.joint.name = std::move(name);
    out_->push_back(std::move(pj));
    expect("}");
  }

  const std::vector<std::string_view>& lines_;
  std::vector<ParsedJoint>* out_ = nullptr;
  std::vector<std::string_view> words_;
  std::size_t word_ = 0;
  std::size_t line_ = 0;
  std::size_t current_line_ = 0;
};

// Header line "Frames: N" / "Frame Time: t", tolerant of "Frames :" spacing.
std::vector<std::string_view> header_values(std::string_view line,
                                            std::string_view key,
                                            std::size_t line_no) {
  std::vector<std::string_view> words = split_words(line);
  std::string joined;
  std::size_t consumed = 0;
  for (; consumed < words.size(); ++consumed) {
    std::string_view w = words[consumed];
    const bool ends_with_colon = !w.empty() && w.back() == ':';
    joined += joined.empty() ? "" : " ";
    joined += w;
    if (ends_with_colon) {
      ++consumed;
      break;
    }
  }
  std::string want = std::string(key) + ":";
  std::string got = joined;
  got.erase(std::remove(got.begin(), got.end(), ' '), got.end());
  want.erase(std::remove(want.begin(), want.end(), ' '), want.end());
  if (!iequals(got, want)) {
    throw ParseError("expected '" + std::string(key) + ":'", line_no);
  }
  return {words.begin() + static_cast<std::ptrdiff_t>(consumed), words.end()};
}

// ----------------------------------------------------------------- writing

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos) return "0.000000";
  return s;
}

std::string format_angle(double degrees) {
  std::string s = format_fixed(degrees);
  if (s == "-180.000000") return "180.000000";
  return s;
}

void write_joint(const SkeletonTopology& topo, std::size_t index, int depth,
                 std::string& out, std::vector<std::size_t>& order) {
  const Joint& joint = topo.joint(index);
  const std::string indent(static_cast<std::size_t>(depth), '\t');
  const Vec3& o = joint.rest_offset;
  const std::string offset = format_fixed(o.x()) + " " + format_fixed(o.y()) + " " +
                             format_fixed(o.z());
  if (joint.end_site) {
    out += indent + "End Site\n" + indent + "{\n";
    out += indent + "\tOFFSET " + offset + "\n";
    out += indent + "}\n";
    return;
  }
  out += indent + (joint.parent ? "JOINT " : "ROOT ") + joint.name + "\n";
  out += indent + "{\n";
  out += indent + "\tOFFSET " + offset + "\n";
  out += indent + "\tCHANNELS " +
         (joint.parent ? std::string("3 Zrotation Xrotation Yrotation")
                       : std::string("6 Xposition Yposition Zposition "
                                     "Zrotation Xrotation Yrotation")) +
         "\n";
  order.push_back(index);
  for (std::size_t c : topo.children(index)) write_joint(topo, c, depth + 1, out, order);
  out += indent + "}\n";
}

}  // namespace

Quat euler_to_quat(std::span<const Axis> order, std::span<const double> degrees) {
  Quat q = Quat::Identity();
  for (std::size_t k = 0; k < order.size() && k < degrees.size(); ++k) {
    q = q * Quat(Eigen::AngleAxisd(degrees[k] * kDegToRad, axis_vector(order[k])));
  }
  return q.normalized();
}

std::array<double, 3> quat_to_euler_zxy(const Quat& q) {
  const Eigen::Matrix3d r = q.normalized().toRotationMatrix();
  // R = Rz Rx Ry:  r(2,1) = sin x, r(0,1) = -sin z cos x, r(1,1) = cos z cos x,
  //                r(2,0) = -cos x sin y, r(2,2) = cos x cos y.
  const double sx = std::clamp(r(2, 1), -1.0, 1.0);
  const double x = std::asin(sx);
  double z;
  double y;
  if (std::abs(sx) < 1.0 - 1e-12) {
    z = std::atan2(-r(0, 1), r(1, 1));
    y = std::atan2(-r(2, 0), r(2, 2));
  } else {
    y = 0.0;
    z = std::atan2(r(1, 0), r(0, 0));
  }
  return {z / kDegToRad, x / kDegToRad, y / kDegToRad};
}

MotionClip parse_bvh(std::string_view text) {
  const std::vector<std::string_view> lines = split_lines(text);
  std::vector<ParsedJoint> parsed;
  HierarchyParser hierarchy(lines);
  const std::size_t motion_line = hierarchy.parse(parsed);

  std::vector<Joint> joints;
  joints.reserve(parsed.size());
  std::size_t width = 0;
  for (const ParsedJoint& pj : parsed) {
    joints.push_back(pj.joint);
    width += pj.channels.size();
  }
  std::optional<SkeletonTopology> topology;
  try {
    topology.emplace(std::move(joints));
  } catch (const InvalidArgument& e) {
    // Point at the offending joint when the message names one.
    std::size_t line = parsed.front().line;
    for (const ParsedJoint& pj : parsed) {
      if (std::string(e.what()).find("'" + pj.joint.name + "'") != std::string::npos) {
        line = pj.line;
        break;
      }
    }
    throw ParseError(e.what(), line);
  }

  // MOTION header: next two non-blank lines.
  std::size_t i = motion_line + 1;
  const auto next_nonblank = [&](std::string_view what) {
    while (i < lines.size() && split_words(lines[i]).empty()) ++i;
    if (i >= lines.size()) {
      throw ParseError("unexpected end of input, expected " + std::string(what),
                       lines.size());
    }
    return i++;
  };
  const std::size_t frames_line = next_nonblank("'Frames:'");
  const auto frames_values = header_values(lines[frames_line], "Frames", frames_line + 1);
  if (frames_values.size() != 1) throw ParseError("malformed Frames line", frames_line + 1);
  const std::size_t declared = parse_count(frames_values[0], frames_line + 1);
  if (declared == 0) throw ParseError("clip declares zero frames", frames_line + 1);
  if (declared > kMaxFrames) throw ParseError("frame count too large", frames_line + 1);

  const std::size_t time_line = next_nonblank("'Frame Time:'");
  const auto time_values = header_values(lines[time_line], "Frame Time", time_line + 1);
  if (time_values.size() != 1) throw ParseError("malformed Frame Time line", time_line + 1);
  const double frame_time = parse_number(time_values[0], time_line + 1);
  if (!(frame_time > 0.0)) throw ParseError("Frame Time must be positive", time_line + 1);

  MotionClip clip{*topology, frame_time, {}};
  const Vec3 root_offset = clip.topology.joint(0).rest_offset;
  std::vector<double> values;
  std::size_t last_row_line = time_line + 1;
  for (; i < lines.size(); ++i) {
    const std::vector<std::string_view> words = split_words(lines[i]);
    if (words.empty()) continue;
    const std::size_t line_no = i + 1;
    if (clip.frames.size() == declared) {
      throw ParseError("more frame rows than the " + std::to_string(declared) +
                           " declared on line " + std::to_string(frames_line + 1),
                       line_no);
    }
    if (words.size() != width) {
      throw ParseError("frame row has " + std::to_string(words.size()) +
                           " values, expected " + std::to_string(width),
                       line_no);
    }
    values.clear();
    for (std::string_view w : words) values.push_back(parse_number(w, line_no));

    Pose pose = rest_pose(clip.topology, root_offset);
    std::size_t v = 0;
    std::array<Axis, 3> axes{};
    std::array<double, 3> angles{};
    for (std::size_t j = 0; j < parsed.size(); ++j) {
      std::size_t n_rot = 0;
      for (Channel c : parsed[j].channels) {
        const double value = values[v++];
        switch (c) {
          case Channel::kXpos:
            pose.root_translation.x() += value;
            break;
          case Channel::kYpos:
            pose.root_translation.y() += value;
            break;
          case Channel::kZpos:
            pose.root_translation.z() += value;
            break;
          case Channel::kXrot:
            axes[n_rot] = Axis::kX;
            angles[n_rot++] = value;
            break;
          case Channel::kYrot:
            axes[n_rot] = Axis::kY;
            angles[n_rot++] = value;
            break;
          case Channel::kZrot:
            axes[n_rot] = Axis::kZ;
            angles[n_rot++] = value;
            break;
        }
      }
      pose.local_rotations[j] = euler_to_quat(std::span(axes.data(), n_rot),
                                              std::span(angles.data(), n_rot));
    }
    clip.frames.push_back(std::move(pose));
    last_row_line = line_no;
  }
  if (clip.frames.size() != declared) {
    throw ParseError("expected " + std::to_string(declared) + " frame rows (declared on line " +
                         std::to_string(frames_line + 1) + "), found " +
                         std::to_string(clip.frames.size()) + " ending at line " +
                         std::to_string(last_row_line),
                     last_row_line + 1);
  }
  return clip;
}

std::string write_bvh(const MotionClip& clip) {
  validate_clip(clip);
  const SkeletonTopology& topo = clip.topology;
  std::string out = "HIERARCHY\n";
  std::vector<std::size_t> order;
  write_joint(topo, 0, 0, out, order);

  char buf[64];
  out += "MOTION\n";
  out += "Frames: " + std::to_string(clip.frames.size()) + "\n";
  std::snprintf(buf, sizeof(buf), "%.8f", clip.frame_time);
  out += std::string("Frame Time: ") + buf + "\n";

  const Vec3 root_offset = topo.joint(0).rest_offset;
  for (const Pose& pose : clip.frames) {
    const Vec3 t = pose.root_translation - root_offset;
    std::string row = format_fixed(t.x()) + " " + format_fixed(t.y()) + " " +
                      format_fixed(t.z());
    for (std::size_t j : order) {
      const auto zxy = quat_to_euler_zxy(pose.local_rotations[j]);
      for (double a : zxy) row += " " + format_angle(a);
    }
    out += row + "\n";
  }
  return out;
}

MotionClip read_bvh_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_bvh(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

void write_bvh_file(const std::filesystem::path& path, const MotionClip& clip) {
  const std::string text = write_bvh(clip);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace rsa::motion
