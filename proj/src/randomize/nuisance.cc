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

#include "rsa/randomize/nuisance.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include "rsa/common/error.h"
#include "rsa/motion/builtin_topologies.h"

namespace rsa::randomize {
namespace {

enum class BoneGroup { kRoot, kTorso, kNeck, kHead, kUpperArm, kForearm, kHand,
                       kFinger, kThigh, kShin, kFoot };

BoneGroup group_of(std::string_view name) {
  const auto has = [&](std::string_view s) { return name.find(s) != std::string_view::npos; };
  if (name == "SpineBase") return BoneGroup::kRoot;
  if (has("Spine") || has("Shoulder") || has("Hip")) return BoneGroup::kTorso;
  if (name == "Neck") return BoneGroup::kNeck;
  if (name == "Head") return BoneGroup::kHead;
  if (has("Elbow")) return BoneGroup::kUpperArm;
  if (has("Wrist")) return BoneGroup::kForearm;
  if (has("HandTip") || has("Thumb")) return BoneGroup::kFinger;
  if (has("Hand")) return BoneGroup::kHand;
  if (has("Knee")) return BoneGroup::kThigh;
  if (has("Ankle")) return BoneGroup::kShin;
  return BoneGroup::kFoot;
}

// Capsule radius relative to the sampled base limb radius.
double radius_factor(BoneGroup g) {
  switch (g) {
    case BoneGroup::kRoot:
      return 0.0;
    case BoneGroup::kTorso:
      return 2.0;
    case BoneGroup::kNeck:
      return 1.0;
    case BoneGroup::kHead:
      return 1.8;
    case BoneGroup::kUpperArm:
      return 0.9;
    case BoneGroup::kForearm:
      return 0.75;
    case BoneGroup::kHand:
      return 0.6;
    case BoneGroup::kFinger:
      return 0.35;
    case BoneGroup::kThigh:
      return 1.3;
    case BoneGroup::kShin:
      return 1.0;
    case BoneGroup::kFoot:
      return 0.8;
  }
  return 1.0;
}

void check_range(const Range& r, std::string_view name) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max) {
    throw InvalidArgument(std::string(name) + " range must satisfy min <= max");
  }
}

void check_texture_ref(const std::string& ref) { parse_texture_ref(ref); }

const std::string& pick(const std::vector<std::string>& pool, RngStream& stream) {
  return pool[stream.engine.bounded(static_cast<std::uint32_t>(pool.size()))];
}

}  // namespace

TextureRef parse_texture_ref(const std::string& ref) {
  constexpr std::string_view kProc = "proc:";
  constexpr std::string_view kFile = "file:";
  constexpr std::string_view kSolid = "solid:";
  const auto bad = [&]() { return InvalidArgument("malformed texture reference '" + ref + "'"); };
  const std::string_view view(ref);
  TextureRef out;
  if (view.rfind(kFile, 0) == 0) {
    if (view.size() == kFile.size()) throw bad();
    out.kind = TextureRef::Kind::kFile;
    out.path = ref.substr(kFile.size());
    return out;
  }
  if (view.rfind(kSolid, 0) == 0) {
    const std::string_view hex = view.substr(kSolid.size());
    if (hex.size() != 6) throw bad();
    const auto [end, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), out.value, 16);
    if (ec != std::errc() || end != hex.data() + hex.size()) throw bad();
    out.kind = TextureRef::Kind::kSolid;
    return out;
  }
  if (view.rfind(kProc, 0) != 0) throw bad();
  const std::string_view rest = view.substr(kProc.size());
  const std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos) throw bad();
  const std::string_view kind = rest.substr(0, colon);
  const std::string_view index = rest.substr(colon + 1);
  if (index.empty() || !std::all_of(index.begin(), index.end(),
                                    [](char c) { return c >= '0' && c <= '9'; })) {
    throw bad();
  }
  const auto [end, ec] = std::from_chars(index.data(), index.data() + index.size(), out.value);
  if (ec != std::errc()) throw bad();
  if (kind == "checker") {
    out.kind = TextureRef::Kind::kChecker;
  } else if (kind == "noise") {
    out.kind = TextureRef::Kind::kNoise;
  } else if (kind == "stripes") {
    out.kind = TextureRef::Kind::kStripes;
  } else {
    throw bad();
  }
  return out;
}

void NuisanceConfig::validate() const {
  check_range(camera_distance, "camera_distance");
  check_range(azimuth, "azimuth");
  check_range(elevation, "elevation");
  check_range(humanoid.height, "humanoid_height");
  check_range(humanoid.arm_length_ratio, "arm_length_ratio");
  check_range(humanoid.leg_length_ratio, "leg_length_ratio");
  check_range(humanoid.torso_scale, "torso_scale");
  check_range(humanoid.limb_radius, "limb_radius");
  if (camera_distance.min <= 0.0) throw InvalidArgument("camera_distance must be > 0");
  if (elevation.min <= -90.0 || elevation.max >= 90.0) {
    throw InvalidArgument("elevation must stay strictly inside (-90, 90) degrees");
  }
  if (humanoid.height.min <= 0.5 || humanoid.height.max >= 2.5) {
    throw InvalidArgument("humanoid_height must lie inside (0.5, 2.5) meters");
  }
  if (humanoid.arm_length_ratio.min <= 0.0 || humanoid.leg_length_ratio.min <= 0.0 ||
      humanoid.torso_scale.min <= 0.0 || humanoid.limb_radius.min <= 0.0) {
    throw InvalidArgument("humanoid ratios and radius must be positive");
  }
  if (texture_pool.empty()) throw InvalidArgument("texture pool is empty");
  for (const std::string& ref : texture_pool) check_texture_ref(ref);
}

NuisanceConfig default_nuisance_config() {
  NuisanceConfig cfg;
  cfg.texture_pool = procedural_texture_pool(48);
  return cfg;
}

HumanoidShape template_humanoid(double height, double limb_radius) {
  const motion::SkeletonTopology& tmpl = motion::kinect25().topology;
  HumanoidShape shape;
  shape.height = height;
  shape.length_multipliers.assign(tmpl.size(), 1.0);
  shape.radii.resize(tmpl.size());
  for (std::size_t j = 0; j < tmpl.size(); ++j) {
    shape.radii[j] = limb_radius * radius_factor(group_of(tmpl.joint(j).name));
  }
  return shape;
}

motion::SkeletonTopology humanoid_topology(const HumanoidShape& shape) {
  const motion::SkeletonTopology& tmpl = motion::kinect25().topology;
  if (shape.length_multipliers.size() != tmpl.size() || shape.radii.size() != tmpl.size()) {
    throw InvalidArgument("humanoid shape does not match the kinect25 template");
  }
  std::vector<motion::Joint> joints = tmpl.joints();
  for (std::size_t j = 0; j < joints.size(); ++j) {
    joints[j].rest_offset *= shape.length_multipliers[j];
  }
  const motion::SkeletonTopology scaled(std::move(joints));
  return scaled.scaled(shape.height / scaled.height());
}

std::pair<HumanoidShape, motion::SkeletonTopology> sample_humanoid(
    const NuisanceConfig& config, RngStream& stream) {
  const HumanoidShapeRanges& r = config.humanoid;
  const double height = stream.engine.uniform(r.height.min, r.height.max);
  const double arm = stream.engine.uniform(r.arm_length_ratio.min, r.arm_length_ratio.max);
  const double leg = stream.engine.uniform(r.leg_length_ratio.min, r.leg_length_ratio.max);
  const double torso = stream.engine.uniform(r.torso_scale.min, r.torso_scale.max);
  const double radius = stream.engine.uniform(r.limb_radius.min, r.limb_radius.max);

  HumanoidShape shape = template_humanoid(height, radius);
  const motion::SkeletonTopology& tmpl = motion::kinect25().topology;
  for (std::size_t j = 0; j < tmpl.size(); ++j) {
    switch (group_of(tmpl.joint(j).name)) {
      case BoneGroup::kTorso:
        shape.length_multipliers[j] = torso;
        shape.radii[j] *= torso;
        break;
      case BoneGroup::kUpperArm:
      case BoneGroup::kForearm:
      case BoneGroup::kHand:
      case BoneGroup::kFinger:
        shape.length_multipliers[j] = arm;
        break;
      case BoneGroup::kThigh:
      case BoneGroup::kShin:
      case BoneGroup::kFoot:
        shape.length_multipliers[j] = leg;
        break;
      default:
        break;
    }
  }
  motion::SkeletonTopology topology = humanoid_topology(shape);
  return {std::move(shape), std::move(topology)};
}

NuisanceSample sample_nuisances(const NuisanceConfig& config, RngStream& stream) {
  NuisanceSample s;
  s.camera.distance =
      stream.engine.uniform(config.camera_distance.min, config.camera_distance.max);
  s.camera.azimuth = stream.engine.uniform(config.azimuth.min, config.azimuth.max);
  s.camera.elevation = stream.engine.uniform(config.elevation.min, config.elevation.max);
  s.textures.sky = pick(config.texture_pool, stream);
  s.textures.floor = pick(config.texture_pool, stream);
  s.textures.body = pick(config.texture_pool, stream);
  s.humanoid = sample_humanoid(config, stream).first;
  return s;
}

std::vector<std::string> procedural_texture_pool(int count, int first_index) {
  static constexpr const char* kKinds[] = {"checker", "noise", "stripes"};
  std::vector<std::string> pool;
  for (int i = 0; i < count; ++i) {
    const int n = first_index + i;
    pool.push_back(std::string("proc:") + kKinds[n % 3] + ":" + std::to_string(n));
  }
  return pool;
}

std::vector<std::string> texture_pool_from_directory(const std::filesystem::path& dir) {
  std::vector<std::string> pool;
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("texture directory " + dir.string() + " does not exist");
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png" || ext == ".ppm") pool.push_back("file:" + entry.path().string());
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

NuisanceConfig nuisance_config_from(const KeyValueConfig& kv, NuisanceConfig base) {
  if (auto r = kv.get_range("camera_distance")) base.camera_distance = *r;
  if (auto r = kv.get_range("azimuth")) base.azimuth = *r;
  if (auto r = kv.get_range("elevation")) base.elevation = *r;
  if (auto r = kv.get_range("humanoid_height")) base.humanoid.height = *r;
  if (auto r = kv.get_range("arm_length_ratio")) base.humanoid.arm_length_ratio = *r;
  if (auto r = kv.get_range("leg_length_ratio")) base.humanoid.leg_length_ratio = *r;
  if (auto r = kv.get_range("torso_scale")) base.humanoid.torso_scale = *r;
  if (auto r = kv.get_range("limb_radius")) base.humanoid.limb_radius = *r;

  const bool pool_keys = kv.has("texture_pool") || kv.has("texture_dir") ||
                         kv.has("procedural_textures");
  if (pool_keys) {
    std::vector<std::string> pool;
    if (auto list = kv.get_list("texture_pool")) pool = *list;
    if (auto dir = kv.get_string("texture_dir")) {
      for (std::string& ref : texture_pool_from_directory(*dir)) pool.push_back(std::move(ref));
    }
    const long long offset = kv.get_int("procedural_texture_offset").value_or(0);
    if (auto n = kv.get_int("procedural_textures")) {
      if (*n < 0) throw InvalidArgument("procedural_textures must be >= 0");
      for (std::string& ref :
           procedural_texture_pool(static_cast<int>(*n), static_cast<int>(offset))) {
        pool.push_back(std::move(ref));
      }
    } else if (pool.empty()) {
      // An empty image directory falls back to procedural textures.
      pool = procedural_texture_pool(48, static_cast<int>(offset));
    }
    base.texture_pool = std::move(pool);
  }
  base.validate();
  return base;
}

nlohmann::json to_json(const NuisanceSample& s) {
  return {
      {"camera",
       {{"distance", s.camera.distance},
        {"azimuth", s.camera.azimuth},
        {"elevation", s.camera.elevation}}},
      {"textures",
       {{"sky", s.textures.sky}, {"floor", s.textures.floor}, {"body", s.textures.body}}},
      {"humanoid",
       {{"height", s.humanoid.height},
        {"length_multipliers", s.humanoid.length_multipliers},
        {"radii", s.humanoid.radii}}},
  };
}

NuisanceSample nuisance_sample_from_json(const nlohmann::json& j) {
  NuisanceSample s;
  const auto& cam = j.at("camera");
  s.camera.distance = cam.at("distance").get<double>();
  s.camera.azimuth = cam.at("azimuth").get<double>();
  s.camera.elevation = cam.at("elevation").get<double>();
  const auto& tex = j.at("textures");
  s.textures.sky = tex.at("sky").get<std::string>();
  s.textures.floor = tex.at("floor").get<std::string>();
  s.textures.body = tex.at("body").get<std::string>();
  const auto& hum = j.at("humanoid");
  s.humanoid.height = hum.at("height").get<double>();
  s.humanoid.length_multipliers = hum.at("length_multipliers").get<std::vector<double>>();
  s.humanoid.radii = hum.at("radii").get<std::vector<double>>();
  return s;
}

}  // namespace rsa::randomize
