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

#ifndef RSA_RENDER_CLIP_H_
#define RSA_RENDER_CLIP_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rsa/render/rasterizer.h"

namespace rsa::render {

struct Groundtruth {
  std::string label;
  std::vector<GroundtruthFrame> frames;
};

struct RenderedClip {
  std::vector<FrameBuffer> frames;
  Groundtruth groundtruth;
  CameraModel camera;
};

// Motion frame shown at clip frame k: the pose nearest to
// start_time + k / frame_rate, reflecting at both ends of the motion.
std::size_t motion_frame_index(const SceneDescription& scene, int clip_frame);

// Mean root position over the clip window.
Vec3 subject_anchor(const SceneDescription& scene);

// The single camera used for every frame of the clip.
CameraModel clip_camera(const SceneDescription& scene);

// Renders clip frames `indices` (any order, duplicates allowed) and hands
// each finished frame to `sink` in the order given. Post-processing is
// applied.
void render_frames(const SceneDescription& scene, const std::vector<int>& indices,
                   const std::function<void(int, RenderedFrame&&)>& sink,
                   TextureCache* cache = nullptr);

// All scene.frame_count frames, in order.
RenderedClip render_clip(const SceneDescription& scene, TextureCache* cache = nullptr);

enum class FrameFormat { kPng, kPpm };

// Writes frame_%05d.{png,ppm}, mask_%05d.png and joints.txt (lines
// "frame joint u v visible") into `dir`, creating it if needed. Renders one
// frame at a time. Returns the list of written file names.
std::vector<std::string> write_clip(const SceneDescription& scene,
                                    const std::filesystem::path& dir,
                                    FrameFormat format = FrameFormat::kPng,
                                    TextureCache* cache = nullptr);

std::string frame_file_name(int frame, FrameFormat format);
std::string mask_file_name(int frame);

}  // namespace rsa::render

#endif  // RSA_RENDER_CLIP_H_
