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

#ifndef RSA_RANDOMIZE_NUISANCE_H_
#define RSA_RANDOMIZE_NUISANCE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rsa/motion/skeleton.h"
#include "rsa/randomize/key_value.h"
#include "rsa/randomize/rng.h"

namespace rsa::randomize {

struct HumanoidShapeRanges {
  Range height{1.5, 1.9};           // meters, rest-pose vertical extent
  Range arm_length_ratio{0.9, 1.1};
  Range leg_length_ratio{0.9, 1.1};
  Range torso_scale{0.9, 1.1};
  Range limb_radius{0.04, 0.07};    // meters, base capsule radius
};

// Texture references: "proc:checker:<n>", "proc:noise:<n>",
// "proc:stripes:<n>" (procedural, n selects colors and scale),
// "solid:RRGGBB" (one hex color) or "file:<path>" (PNG or binary PPM).
struct TextureRef {
  enum class Kind { kChecker, kNoise, kStripes, kSolid, kFile };
  Kind kind = Kind::kSolid;
  std::uint32_t value = 0;  // procedural index, or 0xRRGGBB for kSolid
  std::string path;         // kFile only
};

// Throws InvalidArgument on a malformed reference.
TextureRef parse_texture_ref(const std::string& ref);

struct NuisanceConfig {
  Range camera_distance{2.0, 6.0};  // meters
  Range azimuth{0.0, 360.0};        // degrees, 0 = camera on +Z
  Range elevation{0.0, 60.0};       // degrees above the horizontal
  std::vector<std::string> texture_pool;
  HumanoidShapeRanges humanoid;

  // Throws InvalidArgument on the first violated invariant.
  void validate() const;
};

// Wide randomization ranges with a procedural texture pool.
NuisanceConfig default_nuisance_config();

struct CameraParams {
  double distance = 3.0;
  double azimuth = 0.0;
  double elevation = 0.0;
  friend bool operator==(const CameraParams&, const CameraParams&) = default;
};

struct TextureAssignment {
  std::string sky;
  std::string floor;
  std::string body;
  friend bool operator==(const TextureAssignment&, const TextureAssignment&) = default;
};

// Per-joint multipliers and capsule radii over the kinect25 template; entry j
// describes the bone ending at joint j (entry 0, the root, is unused).
struct HumanoidShape {
  double height = 1.7;
  std::vector<double> length_multipliers;
  std::vector<double> radii;
  friend bool operator==(const HumanoidShape&, const HumanoidShape&) = default;
};

struct NuisanceSample {
  CameraParams camera;
  TextureAssignment textures;
  HumanoidShape humanoid;
  friend bool operator==(const NuisanceSample&, const NuisanceSample&) = default;
};

// Every factor drawn independently and uniformly, in a fixed order: camera
// distance, azimuth, elevation; sky, floor, body texture; then the humanoid.
NuisanceSample sample_nuisances(const NuisanceConfig& config, RngStream& stream);

// Draws height, arm/leg ratios, torso scale and base radius, and returns the
// shape with its derived topology (kinect25 scaled to exactly that height).
std::pair<HumanoidShape, motion::SkeletonTopology> sample_humanoid(
    const NuisanceConfig& config, RngStream& stream);

// The shape with all ratios 1 and the given height and base radius.
HumanoidShape template_humanoid(double height, double limb_radius);

motion::SkeletonTopology humanoid_topology(const HumanoidShape& shape);

// n procedural references cycling through checker, noise and stripes.
std::vector<std::string> procedural_texture_pool(int count, int first_index = 0);
// "file:" references for every .png/.ppm in `dir`, sorted by name.
std::vector<std::string> texture_pool_from_directory(const std::filesystem::path& dir);

// Applies the recognized keys of `kv` on top of `base`:
//   camera_distance, azimuth, elevation                      (ranges)
//   humanoid_height, arm_length_ratio, leg_length_ratio,
//   torso_scale, limb_radius                                  (ranges)
//   texture_pool (list), texture_dir (path), procedural_textures (count),
//   procedural_texture_offset (first procedural index)
NuisanceConfig nuisance_config_from(const KeyValueConfig& kv, NuisanceConfig base);

nlohmann::json to_json(const NuisanceSample& sample);
NuisanceSample nuisance_sample_from_json(const nlohmann::json& j);

}  // namespace rsa::randomize

#endif  // RSA_RANDOMIZE_NUISANCE_H_
