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


#ifndef RSA_GENMODEL_DATASET_H_
#define RSA_GENMODEL_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rsa/genmodel/motion_library.h"
#include "rsa/randomize/nuisance.h"
#include "rsa/render/clip.h"

namespace rsa::genmodel {

enum class Domain { kSynthetic, kReal, kPseudoReal };

std::string domain_name(Domain domain);  // "synthetic", "real", "pseudo-real"
Domain parse_domain(std::string_view name);

// Everything about a clip that is shared by all videos of a dataset.
struct ClipSettings {
  int frame_count = 32;
  double frame_rate = 30.0;
  render::RenderSettings render;  // noise_seed is replaced per video
  render::FrameFormat format = render::FrameFormat::kPng;
};

nlohmann::json to_json(const ClipSettings& settings);
ClipSettings clip_settings_from_json(const nlohmann::json& j);

struct GenerationConfig {
  std::uint64_t master_seed = 0;
  int videos_per_class = 1;
  std::vector<std::string> classes;
  randomize::NuisanceConfig nuisances = randomize::default_nuisance_config();
  ClipSettings clip;
  std::filesystem::path output_root;
  Domain domain = Domain::kSynthetic;
  // Videos are assigned scene_ids[index % size] within each class.
  std::vector<std::string> scene_ids{"scene0"};
  // Stream id of the first video. Datasets sharing a master seed stay
  // independent when their stream ranges do not overlap.
  std::uint64_t first_stream = 0;
  // Where the motion library came from (see resolve_library); copied into
  // the manifest header.
  nlohmann::json library = nlohmann::json::object();

  // Throws InvalidArgument on the first violated invariant.
  void validate(const MotionLibrary& library) const;
};

struct VideoRecord {
  std::string video_id;
  std::string action;
  Domain domain = Domain::kSynthetic;
  std::string scene_id;
  std::string motion_id;
  std::uint64_t stream_id = 0;
  double start_time = 0.0;
  std::uint64_t noise_seed = 0;
  randomize::NuisanceSample nuisances;
  std::string humanoid_id;         // hash of the humanoid shape
  std::string directory;           // relative to the manifest directory
  std::vector<std::string> files;  // inside `directory`
};

nlohmann::json to_json(const VideoRecord& record);
VideoRecord video_record_from_json(const nlohmann::json& j);

// manifest.jsonl: a header object on the first line, then one record per
// line in generation order.
struct DatasetManifest {
  nlohmann::json header;
  std::vector<VideoRecord> records;
  std::filesystem::path root;  // directory holding manifest.jsonl; not serialized

  bool complete() const;
  // Throws InvalidArgument for an unknown id.
  const VideoRecord& find(std::string_view video_id) const;
};

inline constexpr const char* kManifestFile = "manifest.jsonl";
inline constexpr const char* kManifestFormat = "rsa-manifest-1";

// Hex digest identifying a humanoid shape.
std::string humanoid_id(const randomize::HumanoidShape& shape);

// Draws every video's factors without rendering. Video k (class-major order)
// uses stream first_stream + k and draws, in order: the motion clip, the
// nuisances, the start time and the sensor-noise seed.
std::vector<VideoRecord> plan_videos(const GenerationConfig& config,
                                     const MotionLibrary& library);

// The scene that renders `record`: the library clip retargeted to the
// sampled humanoid.
render::SceneDescription build_scene(const VideoRecord& record, const ClipSettings& clip,
                                     const MotionLibrary& library);

// Renders every planned video into output_root/<video id>/ and writes
// output_root/manifest.jsonl. The manifest is rewritten after each video
// with "complete": false in its header and marked complete only at the end,
// so a failed run leaves a manifest flagged invalid.
DatasetManifest generate_dataset(const GenerationConfig& config, const MotionLibrary& library);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
// Throws ParseError (with line) on malformed content and InvalidArgument for
// an incomplete manifest unless `allow_incomplete`.
DatasetManifest load_manifest(const std::filesystem::path& path, bool allow_incomplete = false);

ClipSettings clip_settings(const DatasetManifest& manifest);

// Re-renders one video into `out_dir`; the bytes match the original files.
std::vector<std::string> regenerate_video(const DatasetManifest& manifest,
                                          const MotionLibrary& library,
                                          std::string_view video_id,
                                          const std::filesystem::path& out_dir);

// Library descriptors:
//   {"kind": "procedural", "seed": S, "clips_per_action": K}
//   {"kind": "directory", "path": P}   (relative paths resolve against base)
nlohmann::json procedural_library_descriptor(std::uint64_t seed, int clips_per_action);
MotionLibrary resolve_library(const nlohmann::json& descriptor,
                              const std::filesystem::path& base = {});

// Randomized synthetic sets default to this multiple of the real set size.
inline constexpr int kSyntheticToRealRatio = 4;
int default_synthetic_videos(int real_videos);

// Stand-in for real footage: one 60 degree azimuth band around the front,
// a small procedural texture pool, one fixed humanoid.
randomize::NuisanceConfig pseudo_real_nuisance_config();
// Pseudo-real sensor: warm color cast, gamma and sensor noise.
render::RenderSettings pseudo_real_render_settings();

}  // namespace rsa::genmodel

#endif  // RSA_GENMODEL_DATASET_H_
