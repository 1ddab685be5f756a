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

#include "rsa/render/clip.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rsa/common/error.h"

namespace rsa::render {

std::size_t motion_frame_index(const SceneDescription& scene, int clip_frame) {
  const std::size_t n = scene.motion.frames.size();
  if (n <= 1) return 0;
  const double t = scene.start_time + clip_frame / scene.frame_rate;
  const auto i = static_cast<std::uint64_t>(std::llround(t / scene.motion.frame_time));
  const std::uint64_t period = 2 * (n - 1);
  const std::uint64_t m = i % period;
  return static_cast<std::size_t>(m < n ? m : period - m);
}

Vec3 subject_anchor(const SceneDescription& scene) {
  Vec3 sum = Vec3::Zero();
  for (int k = 0; k < scene.frame_count; ++k) {
    sum += scene.motion.frames[motion_frame_index(scene, k)].root_translation;
  }
  return sum / scene.frame_count;
}

CameraModel clip_camera(const SceneDescription& scene) {
  return build_camera(scene.nuisances.camera, subject_anchor(scene), scene.settings.camera);
}

void render_frames(const SceneDescription& scene, const std::vector<int>& indices,
                   const std::function<void(int, RenderedFrame&&)>& sink, TextureCache* cache) {
  validate_scene(scene);
  const CameraModel camera = clip_camera(scene);
  const SceneTextures textures = resolve_textures(scene.nuisances.textures, cache);
  for (int k : indices) {
    if (k < 0 || k >= scene.frame_count) {
      throw InvalidArgument("clip frame index " + std::to_string(k) + " out of range");
    }
    RenderedFrame frame =
        rasterize_frame(scene, scene.motion.frames[motion_frame_index(scene, k)], camera,
                        textures);
    post_process(scene.settings, k, frame.frame);
    sink(k, std::move(frame));
  }
}

RenderedClip render_clip(const SceneDescription& scene, TextureCache* cache) {
  validate_scene(scene);
  RenderedClip clip;
  clip.camera = clip_camera(scene);
  clip.groundtruth.label = scene.action;
  std::vector<int> all(static_cast<std::size_t>(scene.frame_count));
  for (int k = 0; k < scene.frame_count; ++k) all[static_cast<std::size_t>(k)] = k;
  render_frames(
      scene, all,
      [&clip](int, RenderedFrame&& f) {
        clip.frames.push_back(std::move(f.frame));
        clip.groundtruth.frames.push_back(std::move(f.groundtruth));
      },
      cache);
  return clip;
}

std::string frame_file_name(int frame, FrameFormat format) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%05d.%s", frame, format == FrameFormat::kPng ? "png" : "ppm");
  return buf;
}

std::string mask_file_name(int frame) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "mask_%05d.png", frame);
  return buf;
}

std::vector<std::string> write_clip(const SceneDescription& scene,
                                    const std::filesystem::path& dir, FrameFormat format,
                                    TextureCache* cache) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream joints(dir / "joints.txt");
  if (!joints) throw IoError("cannot write " + (dir / "joints.txt").string());
  joints << "# frame joint u v visible\n";
  std::vector<std::string> files;
  std::vector<int> all(static_cast<std::size_t>(scene.frame_count));
  for (int k = 0; k < scene.frame_count; ++k) all[static_cast<std::size_t>(k)] = k;
  render_frames(
      scene, all,
      [&](int k, RenderedFrame&& f) {
        const std::string frame_name = frame_file_name(k, format);
        const std::string mask_name = mask_file_name(k);
        write_image(dir / frame_name, f.frame.image());
        write_image(dir / mask_name, f.groundtruth.mask);
        files.push_back(frame_name);
        files.push_back(mask_name);
        char line[128];
        for (std::size_t j = 0; j < f.groundtruth.joints.size(); ++j) {
          const JointLabel& label = f.groundtruth.joints[j];
          const double u = label.in_front ? label.pixel.x() : 0.0;
          const double v = label.in_front ? label.pixel.y() : 0.0;
          std::snprintf(line, sizeof line, "%d %zu %.4f %.4f %d\n", k, j, u, v,
                        label.visible ? 1 : 0);
          joints << line;
        }
      },
      cache);
  if (!joints.flush()) throw IoError("failed writing joints.txt in " + dir.string());
  files.push_back("joints.txt");
  return files;
}

}  // namespace rsa::render
