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


#include "rsa/genmodel/dataset.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "rsa/common/error.h"
#include "rsa/genmodel/actions.h"
#include "rsa/motion/kinematics.h"

namespace rsa::genmodel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_name(render::FrameFormat f) {
  return f == render::FrameFormat::kPng ? "png" : "ppm";
}

render::FrameFormat parse_format(const std::string& s) {
  if (s == "png") return render::FrameFormat::kPng;
  if (s == "ppm") return render::FrameFormat::kPpm;
  throw InvalidArgument("unknown frame format '" + s + "'");
}

std::string video_id(Domain domain, std::uint64_t stream) {
  static constexpr const char* kPrefix[] = {"syn", "real", "pr"};
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%06llu", kPrefix[static_cast<int>(domain)],
                static_cast<unsigned long long>(stream));
  return buf;
}

void write_lines(const fs::path& path, const json& header,
                 const std::vector<VideoRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << header.dump() << '\n';
  for (const VideoRecord& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

double lowest_joint(const motion::SkeletonTopology& topology, const motion::Pose& pose) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const motion::Vec3& p : motion::forward_kinematics(topology, pose)) {
    lowest = std::min(lowest, p.y());
  }
  return lowest;
}

}  // namespace

std::string domain_name(Domain domain) {
  switch (domain) {
    case Domain::kSynthetic:
      return "synthetic";
    case Domain::kReal:
      return "real";
    case Domain::kPseudoReal:
      return "pseudo-real";
  }
  return "synthetic";
}

Domain parse_domain(std::string_view name) {
  if (name == "synthetic") return Domain::kSynthetic;
  if (name == "real") return Domain::kReal;
  if (name == "pseudo-real") return Domain::kPseudoReal;
  throw InvalidArgument("unknown domain '" + std::string(name) +
                        "' (expected synthetic, real or pseudo-real)");
}

json to_json(const ClipSettings& s) {
  const render::RenderSettings& r = s.render;
  return {
      {"frame_count", s.frame_count},
      {"frame_rate", s.frame_rate},
      {"format", format_name(s.format)},
      {"width", r.camera.width},
      {"height", r.camera.height},
      {"fov_deg", r.camera.fov_deg},
      {"near_plane", r.camera.near_plane},
      {"light_direction", {r.light_direction.x(), r.light_direction.y(), r.light_direction.z()}},
      {"ambient", r.ambient},
      {"diffuse", r.diffuse},
      {"floor_texels_per_meter", r.floor_texels_per_meter},
      {"body_texture_repeat", r.body_texture_repeat},
      {"color_gain", r.color_gain},
      {"gamma", r.gamma},
      {"sensor_noise", r.sensor_noise},
  };
}

ClipSettings clip_settings_from_json(const json& j) {
  ClipSettings s;
  s.frame_count = j.at("frame_count").get<int>();
  s.frame_rate = j.at("frame_rate").get<double>();
  s.format = parse_format(j.at("format").get<std::string>());
  render::RenderSettings& r = s.render;
  r.camera.width = j.at("width").get<int>();
  r.camera.height = j.at("height").get<int>();
  r.camera.fov_deg = j.at("fov_deg").get<double>();
  r.camera.near_plane = j.at("near_plane").get<double>();
  const auto light = j.at("light_direction").get<std::vector<double>>();
  if (light.size() != 3) throw InvalidArgument("light_direction needs 3 components");
  r.light_direction = motion::Vec3(light[0], light[1], light[2]);
  r.ambient = j.at("ambient").get<double>();
  r.diffuse = j.at("diffuse").get<double>();
  r.floor_texels_per_meter = j.at("floor_texels_per_meter").get<double>();
  r.body_texture_repeat = j.at("body_texture_repeat").get<double>();
  r.color_gain = j.at("color_gain").get<std::array<double, 3>>();
  r.gamma = j.at("gamma").get<double>();
  r.sensor_noise = j.at("sensor_noise").get<double>();
  return s;
}

void GenerationConfig::validate(const MotionLibrary& library) const {
  if (videos_per_class < 1) throw InvalidArgument("videos_per_class must be >= 1");
  if (classes.empty()) throw InvalidArgument("class list is empty");
  std::set<std::string> seen;
  for (const std::string& c : classes) {
    if (!seen.insert(c).second) throw InvalidArgument("duplicate class '" + c + "'");
    library.clips(c);  // throws listing the available labels
  }
  if (scene_ids.empty()) throw InvalidArgument("scene_ids is empty");
  for (const std::string& s : scene_ids) {
    if (s.empty()) throw InvalidArgument("scene ids must be nonempty");
  }
  if (clip.frame_count < 1) throw InvalidArgument("frame_count must be >= 1");
  if (!(clip.frame_rate > 0.0)) throw InvalidArgument("frame_rate must be > 0");
  nuisances.validate();
}

json to_json(const VideoRecord& r) {
  return {
      {"video_id", r.video_id},
      {"action", r.action},
      {"domain", domain_name(r.domain)},
      {"scene_id", r.scene_id},
      {"motion_id", r.motion_id},
      {"stream_id", r.stream_id},
      {"start_time", r.start_time},
      {"noise_seed", r.noise_seed},
      {"nuisances", randomize::to_json(r.nuisances)},
      {"humanoid_id", r.humanoid_id},
      {"directory", r.directory},
      {"files", r.files},
  };
}

VideoRecord video_record_from_json(const json& j) {
  VideoRecord r;
  r.video_id = j.at("video_id").get<std::string>();
  r.action = j.at("action").get<std::string>();
  r.domain = parse_domain(j.at("domain").get<std::string>());
  r.scene_id = j.at("scene_id").get<std::string>();
  r.motion_id = j.at("motion_id").get<std::string>();
  r.stream_id = j.at("stream_id").get<std::uint64_t>();
  r.start_time = j.at("start_time").get<double>();
  r.noise_seed = j.at("noise_seed").get<std::uint64_t>();
  r.nuisances = randomize::nuisance_sample_from_json(j.at("nuisances"));
  r.humanoid_id = j.at("humanoid_id").get<std::string>();
  r.directory = j.at("directory").get<std::string>();
  r.files = j.at("files").get<std::vector<std::string>>();
  return r;
}

bool DatasetManifest::complete() const {
  return header.is_object() && header.value("complete", false);
}

const VideoRecord& DatasetManifest::find(std::string_view id) const {
  for (const VideoRecord& r : records) {
    if (r.video_id == id) return r;
  }
  throw InvalidArgument("manifest has no video '" + std::string(id) + "'");
}

std::string humanoid_id(const randomize::HumanoidShape& shape) {
  // FNV-1a over the shortest round-trip text of every field.
  const std::string text = json{{"height", shape.height},
                                {"length_multipliers", shape.length_multipliers},
                                {"radii", shape.radii}}
                               .dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<VideoRecord> plan_videos(const GenerationConfig& config,
                                     const MotionLibrary& library) {
  config.validate(library);
  std::vector<VideoRecord> records;
  const auto per_class = static_cast<std::uint64_t>(config.videos_per_class);
  for (std::size_t c = 0; c < config.classes.size(); ++c) {
    for (std::uint64_t i = 0; i < per_class; ++i) {
      const std::uint64_t stream_id = config.first_stream + c * per_class + i;
      randomize::RngStream stream = randomize::derive_stream(config.master_seed, stream_id);
      VideoRecord r;
      r.action = config.classes[c];
      r.domain = config.domain;
      r.video_id = video_id(config.domain, stream_id);
      r.scene_id = config.scene_ids[i % config.scene_ids.size()];
      r.stream_id = stream_id;
      const LibraryClip& clip = sample_motion(library, r.action, stream);
      r.motion_id = clip.id;
      r.nuisances = randomize::sample_nuisances(config.nuisances, stream);
      r.start_time = stream.engine.uniform(0.0, clip.clip.duration());
      r.noise_seed = (static_cast<std::uint64_t>(stream.engine.next_u32()) << 32) |
                     stream.engine.next_u32();
      r.humanoid_id = humanoid_id(r.nuisances.humanoid);
      r.directory = r.video_id;
      records.push_back(std::move(r));
    }
  }
  return records;
}

render::SceneDescription build_scene(const VideoRecord& record, const ClipSettings& clip,
                                     const MotionLibrary& library) {
  render::SceneDescription scene;
  scene.action = record.action;
  scene.nuisances = record.nuisances;
  const motion::SkeletonTopology topology =
      randomize::humanoid_topology(record.nuisances.humanoid);
  const motion::MotionClip& source = library.clip(record.action, record.motion_id).clip;
  scene.motion = motion::rescale_to_topology(source, topology);
  // Different limb proportions move the feet: keep the source's clearance
  // above the floor, and never let capture noise sink a joint below it.
  const double ratio = topology.height() / source.topology.height();
  for (std::size_t k = 0; k < scene.motion.frames.size(); ++k) {
    motion::Pose& pose = scene.motion.frames[k];
    const double clearance =
        std::max(0.0, ratio * lowest_joint(source.topology, source.frames[k]));
    pose.root_translation.y() += clearance - lowest_joint(topology, pose);
  }
  scene.frame_count = clip.frame_count;
  scene.frame_rate = clip.frame_rate;
  scene.start_time = record.start_time;
  scene.settings = clip.render;
  scene.settings.noise_seed = record.noise_seed;
  return scene;
}

DatasetManifest generate_dataset(const GenerationConfig& config, const MotionLibrary& library) {
  std::vector<VideoRecord> planned = plan_videos(config, library);
  std::error_code ec;
  fs::create_directories(config.output_root, ec);
  if (ec || !fs::is_directory(config.output_root)) {
    throw IoError("cannot create output directory " + config.output_root.string());
  }

  DatasetManifest manifest;
  manifest.root = config.output_root;
  manifest.header = {
      {"format", kManifestFormat},
      {"complete", false},
      {"domain", domain_name(config.domain)},
      {"master_seed", config.master_seed},
      {"first_stream", config.first_stream},
      {"classes", config.classes},
      {"videos_per_class", config.videos_per_class},
      {"rng", std::string(randomize::Pcg32::kAlgorithm)},
      {"clip", to_json(config.clip)},
      {"library", config.library},
  };
  const fs::path path = config.output_root / kManifestFile;
  write_lines(path, manifest.header, {});

  render::TextureCache cache;
  std::ofstream append;
  for (VideoRecord& r : planned) {
    const render::SceneDescription scene = build_scene(r, config.clip, library);
    r.files = render::write_clip(scene, config.output_root / r.directory, config.clip.format,
                                 &cache);
    if (!append.is_open()) append.open(path, std::ios::binary | std::ios::app);
    append << to_json(r).dump() << '\n' << std::flush;
    if (!append) throw IoError("write failed for " + path.string());
    manifest.records.push_back(std::move(r));
  }
  append.close();
  manifest.header["complete"] = true;
  write_lines(path, manifest.header, manifest.records);
  return manifest;
}

void write_manifest(const DatasetManifest& manifest, const fs::path& path) {
  write_lines(path, manifest.header, manifest.records);
}

DatasetManifest load_manifest(const fs::path& path, bool allow_incomplete) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  DatasetManifest manifest;
  manifest.root = path.parent_path();
  std::set<std::string> ids;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), number);
    }
    if (manifest.header.is_null()) {
      if (!j.is_object() || j.value("format", "") != kManifestFormat) {
        throw ParseError(std::string("header must declare format ") + kManifestFormat, number);
      }
      manifest.header = std::move(j);
      continue;
    }
    try {
      VideoRecord r = video_record_from_json(j);
      if (!ids.insert(r.video_id).second) {
        throw ParseError("duplicate video id '" + r.video_id + "'", number);
      }
      manifest.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad record: ") + e.what(), number);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), number);
    }
  }
  if (manifest.header.is_null()) throw ParseError("empty manifest", 0);
  if (!allow_incomplete && !manifest.complete()) {
    throw InvalidArgument("manifest " + path.string() +
                          " is flagged incomplete (generation did not finish)");
  }
  return manifest;
}

ClipSettings clip_settings(const DatasetManifest& manifest) {
  return clip_settings_from_json(manifest.header.at("clip"));
}

std::vector<std::string> regenerate_video(const DatasetManifest& manifest,
                                          const MotionLibrary& library,
                                          std::string_view video_id, const fs::path& out_dir) {
  const ClipSettings clip = clip_settings(manifest);
  const render::SceneDescription scene = build_scene(manifest.find(video_id), clip, library);
  return render::write_clip(scene, out_dir, clip.format);
}

json procedural_library_descriptor(std::uint64_t seed, int clips_per_action) {
  return {{"kind", "procedural"}, {"seed", seed}, {"clips_per_action", clips_per_action}};
}

MotionLibrary resolve_library(const json& d, const fs::path& base) {
  const std::string kind = d.value("kind", "");
  if (kind == "procedural") {
    ProceduralLibraryOptions options;
    options.clips_per_action = d.at("clips_per_action").get<int>();
    return build_procedural_library(options, d.at("seed").get<std::uint64_t>());
  }
  if (kind == "directory") {
    fs::path p = d.at("path").get<std::string>();
    if (p.is_relative() && !base.empty()) p = base / p;
    return load_motion_library(p);
  }
  throw InvalidArgument("unknown motion library descriptor '" + d.dump() + "'");
}

int default_synthetic_videos(int real_videos) { return kSyntheticToRealRatio * real_videos; }

randomize::NuisanceConfig pseudo_real_nuisance_config() {
  randomize::NuisanceConfig c;
  c.camera_distance = {3.0, 4.0};
  c.azimuth = {-30.0, 30.0};
  c.elevation = {5.0, 20.0};
  c.texture_pool = randomize::procedural_texture_pool(3, 100);
  c.humanoid.height = {1.7, 1.7};
  c.humanoid.arm_length_ratio = {1.0, 1.0};
  c.humanoid.leg_length_ratio = {1.0, 1.0};
  c.humanoid.torso_scale = {1.0, 1.0};
  c.humanoid.limb_radius = {0.055, 0.055};
  return c;
}

render::RenderSettings pseudo_real_render_settings() {
  render::RenderSettings s;
  s.color_gain = {1.1, 1.0, 0.85};
  s.gamma = 0.8;
  s.sensor_noise = 6.0;
  return s;
}

}  // namespace rsa::genmodel
