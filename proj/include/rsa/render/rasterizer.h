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

#ifndef RSA_RENDER_RASTERIZER_H_
#define RSA_RENDER_RASTERIZER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rsa/motion/skeleton.h"
#include "rsa/randomize/nuisance.h"
#include "rsa/render/camera.h"
#include "rsa/render/image.h"
#include "rsa/render/texture.h"

namespace rsa::render {

// Appearance settings shared by every frame of a clip. The post-process
// fields (gain, gamma, sensor noise) default to identity.
struct RenderSettings {
  CameraIntrinsics camera;
  Vec3 light_direction = Vec3(0.3, 0.8, 0.5).normalized();  // towards the light
  double ambient = 0.35;
  double diffuse = 0.65;
  double floor_texels_per_meter = 64.0;
  double body_texture_repeat = 1.0;
  std::array<double, 3> color_gain{1.0, 1.0, 1.0};
  double gamma = 1.0;
  double sensor_noise = 0.0;  // half-width of uniform per-channel noise, in levels
  std::uint64_t noise_seed = 0;
};

// Argument of the generator: the motion must be expressed on the humanoid's
// topology (nuisances.humanoid.radii has one entry per joint).
struct SceneDescription {
  std::string action;
  motion::MotionClip motion;
  randomize::NuisanceSample nuisances;
  int frame_count = 32;
  double frame_rate = 30.0;
  double start_time = 0.0;  // seconds into the motion
  RenderSettings settings;
};

// Throws InvalidArgument on the first violated invariant.
void validate_scene(const SceneDescription& scene);

struct FrameBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // interleaved, row-major
  std::vector<float> depth;       // meters along the forward axis, +inf for sky

  Image image() const;
};

struct JointLabel {
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();
  double depth = 0.0;
  bool in_front = false;  // false: behind the near plane, pixel meaningless
  bool visible = false;
};

struct GroundtruthFrame {
  Image mask;  // single channel, 255 on body pixels
  std::vector<JointLabel> joints;
  // Bone id (child joint index) of the body surface per pixel, -1 elsewhere.
  std::vector<std::int16_t> bone_ids;
};

struct SceneTextures {
  std::shared_ptr<const Texture> sky;
  std::shared_ptr<const Texture> floor;
  std::shared_ptr<const Texture> body;
};

// Resolves the three texture references, through `cache` when given.
SceneTextures resolve_textures(const randomize::TextureAssignment& refs,
                               TextureCache* cache = nullptr);

struct RenderedFrame {
  FrameBuffer frame;
  GroundtruthFrame groundtruth;
};

// Renders one pose: sky and floor from the background kernel, then one
// capsule per bone ray-cast against the depth buffer. No post-processing.
RenderedFrame rasterize_frame(const SceneDescription& scene, const motion::Pose& pose,
                              const CameraModel& camera, const SceneTextures& textures);
RenderedFrame rasterize_frame(const SceneDescription& scene, const motion::Pose& pose,
                              const CameraModel& camera);

// Nearest intersection of the ray origin + t dir with the capsule of the
// given radius around segment [a, b], over t > t_min; infinity when missed.
double ray_capsule(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                   double radius, double t_min);

// Applies settings' gain, gamma and sensor noise. Noise is drawn from a
// stream keyed by (noise_seed, frame_index).
void post_process(const RenderSettings& settings, int frame_index, FrameBuffer& frame);

}  // namespace rsa::render

#endif  // RSA_RENDER_RASTERIZER_H_
