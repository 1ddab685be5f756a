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

#include "rsa/render/rasterizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rsa/common/error.h"
#include "rsa/kernels/pixel.h"
#include "rsa/motion/kinematics.h"
#include "rsa/randomize/rng.h"

namespace rsa::render {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTex = kernels::kTextureSize;

struct Capsule {
  std::int16_t id;
  Vec3 a;
  Vec3 b;
  double radius;
  Vec3 axis;   // unit, a -> b (arbitrary for degenerate bones)
  Vec3 e1;     // unit, perpendicular to axis, fixed in the parent frame
  Vec3 e2;
  double length;
};

Vec3 any_perpendicular(const Vec3& d) {
  const Vec3 helper = std::fabs(d.x()) <= std::fabs(d.y()) && std::fabs(d.x()) <= std::fabs(d.z())
                          ? Vec3::UnitX()
                          : (std::fabs(d.y()) <= std::fabs(d.z()) ? Vec3::UnitY() : Vec3::UnitZ());
  return d.cross(helper).normalized();
}

std::uint8_t shade(std::uint32_t c, double factor) {
  const long v = std::lround(static_cast<double>(c) * factor);
  return static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
}

std::vector<Capsule> build_capsules(const motion::SkeletonTopology& topo,
                                    const motion::WorldPose& world,
                                    const std::vector<double>& radii) {
  std::vector<Capsule> capsules;
  for (std::size_t j = 1; j < topo.size(); ++j) {
    if (!(radii[j] > 0.0)) continue;
    const std::size_t p = *topo.joint(j).parent;
    Capsule c;
    c.id = static_cast<std::int16_t>(j);
    c.a = world.positions[p];
    c.b = world.positions[j];
    c.radius = radii[j];
    const Vec3 ba = c.b - c.a;
    c.length = ba.norm();
    const Vec3& rest = topo.joint(j).rest_offset;
    c.axis = c.length > 0.0 ? Vec3(ba / c.length)
                            : Vec3(world.rotations[p] * Vec3::UnitY());
    const Vec3 rest_dir = rest.norm() > 0.0 ? Vec3(rest.normalized()) : Vec3::UnitY();
    Vec3 e1 = world.rotations[p] * any_perpendicular(rest_dir);
    e1 -= e1.dot(c.axis) * c.axis;
    c.e1 = e1.norm() > 1e-12 ? Vec3(e1.normalized()) : any_perpendicular(c.axis);
    c.e2 = c.axis.cross(c.e1);
    capsules.push_back(c);
  }
  return capsules;
}

struct PixelRect {
  int x0, y0, x1, y1;  // half-open
};

// Screen bounds of the capsule: the hull of the projected corners of the
// boxes around both end spheres. Falls back to the whole image when either
// sphere reaches the near plane.
PixelRect capsule_bounds(const CameraModel& camera, const Capsule& c) {
  const int w = camera.intrinsics.width;
  const int h = camera.intrinsics.height;
  const PixelRect full{0, 0, w, h};
  double umin = kInf, umax = -kInf, vmin = kInf, vmax = -kInf;
  for (const Vec3* end : {&c.a, &c.b}) {
    const Vec3 p = to_camera_space(camera, *end);
    if (p.z() - c.radius <= camera.intrinsics.near_plane) return full;
    for (double dz : {-c.radius, c.radius}) {
      for (double dx : {-c.radius, c.radius}) {
        const double u = camera.cx() + camera.focal * (p.x() + dx) / (p.z() + dz);
        umin = std::min(umin, u);
        umax = std::max(umax, u);
      }
      for (double dy : {-c.radius, c.radius}) {
        const double v = camera.cy() - camera.focal * (p.y() + dy) / (p.z() + dz);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  const auto clampi = [](double x, int lo, int hi) {
    return static_cast<int>(std::clamp(x, static_cast<double>(lo), static_cast<double>(hi)));
  };
  return {clampi(std::floor(umin) - 1, 0, w), clampi(std::floor(vmin) - 1, 0, h),
          clampi(std::ceil(umax) + 1, 0, w), clampi(std::ceil(vmax) + 1, 0, h)};
}

void draw_background(const SceneDescription& scene, const CameraModel& camera,
                     const SceneTextures& textures, FrameBuffer& fb) {
  const RenderSettings& s = scene.settings;
  kernels::BackgroundRow row{};
  const Vec3 right = camera.right();
  const Vec3 up = camera.up();
  const Vec3 forward = camera.forward();
  for (int k = 0; k < 3; ++k) {
    row.right[k] = static_cast<float>(right[k]);
    row.eye[k] = static_cast<float>(camera.position[k]);
  }
  row.cx = static_cast<float>(camera.cx());
  row.inv_focal = static_cast<float>(1.0 / camera.focal);
  row.near_plane = static_cast<float>(camera.intrinsics.near_plane);
  row.floor_scale = static_cast<float>(s.floor_texels_per_meter);
  row.floor_shade =
      static_cast<float>(s.ambient + s.diffuse * std::max(0.0, s.light_direction.y()));
  row.floor_texels = textures.floor->texels.data();
  row.sky_texels = textures.sky->texels.data();
  const kernels::PixelKernels& k = kernels::pixel_kernels();
  for (int y = 0; y < fb.height; ++y) {
    const double yc = (camera.cy() - (y + 0.5)) / camera.focal;
    const Vec3 dir = forward + yc * up;
    for (int c = 0; c < 3; ++c) row.row_dir[c] = static_cast<float>(dir[c]);
    k.background_row(row, fb.width, fb.rgb.data() + static_cast<std::size_t>(y) * fb.width * 3,
                     fb.depth.data() + static_cast<std::size_t>(y) * fb.width);
  }
}

void draw_capsule(const SceneDescription& scene, const CameraModel& camera,
                  const Texture& body, const Capsule& c, FrameBuffer& fb,
                  std::vector<std::int16_t>& ids) {
  const RenderSettings& s = scene.settings;
  const PixelRect rect = capsule_bounds(camera, c);
  const Vec3 right = camera.right();
  const Vec3 up = camera.up();
  const Vec3 forward = camera.forward();
  const double near = camera.intrinsics.near_plane;
  const double circumference = 2.0 * std::numbers::pi * c.radius;
  for (int y = rect.y0; y < rect.y1; ++y) {
    const double yc = (camera.cy() - (y + 0.5)) / camera.focal;
    const Vec3 row_dir = forward + yc * up;
    for (int x = rect.x0; x < rect.x1; ++x) {
      const double xc = (x + 0.5 - camera.cx()) / camera.focal;
      const Vec3 dir = row_dir + xc * right;
      const double t = ray_capsule(camera.position, dir, c.a, c.b, c.radius, near);
      const std::size_t idx = static_cast<std::size_t>(y) * fb.width + x;
      if (!(static_cast<float>(t) < fb.depth[idx])) continue;
      const Vec3 p = camera.position + t * dir;
      const double along = std::clamp((p - c.a).dot(c.axis), 0.0, c.length);
      Vec3 radial = p - (c.a + along * c.axis);
      Vec3 normal = radial.norm() > 0.0 ? Vec3(radial.normalized()) : Vec3(-dir.normalized());
      if (normal.dot(dir) > 0.0) normal = -normal;
      const double light = s.ambient + s.diffuse * std::max(0.0, normal.dot(s.light_direction));
      const double angle = std::atan2(radial.dot(c.e2), radial.dot(c.e1));
      const double u = (angle / (2.0 * std::numbers::pi) + 0.5) * kTex * s.body_texture_repeat;
      const double v = along / circumference * kTex * s.body_texture_repeat;
      const std::uint32_t texel = body.at(static_cast<int>(std::floor(u)),
                                          static_cast<int>(std::floor(v)));
      std::uint8_t* out = fb.rgb.data() + 3 * idx;
      out[0] = shade(texel & 0xFF, light);
      out[1] = shade((texel >> 8) & 0xFF, light);
      out[2] = shade((texel >> 16) & 0xFF, light);
      fb.depth[idx] = static_cast<float>(t);
      ids[idx] = c.id;
    }
  }
}

// The joint is hidden when the segment from the eye to it enters a capsule
// that does not contain the joint itself. Capsules around the joint are its
// own flesh and never hide it.
bool line_of_sight_blocked(const Vec3& eye, const Vec3& joint,
                           const std::vector<Capsule>& capsules) {
  // The floor plane y = 0 hides anything on its far side.
  if ((eye.y() > 0.0) != (joint.y() > 0.0)) return true;
  const Vec3 dir = joint - eye;
  for (const Capsule& c : capsules) {
    const Vec3 ba = c.b - c.a;
    const double len2 = ba.squaredNorm();
    const double s = len2 > 0.0 ? std::clamp((joint - c.a).dot(ba) / len2, 0.0, 1.0) : 0.0;
    if ((joint - (c.a + s * ba)).norm() < c.radius) continue;
    if (ray_capsule(eye, dir, c.a, c.b, c.radius, 0.0) < 1.0) return true;
  }
  return false;
}

}  // namespace

void validate_scene(const SceneDescription& scene) {
  if (scene.frame_count < 1) throw InvalidArgument("scene frame_count must be >= 1");
  if (!(scene.frame_rate > 0.0) || !std::isfinite(scene.frame_rate)) {
    throw InvalidArgument("scene frame_rate must be > 0");
  }
  if (!std::isfinite(scene.start_time) || scene.start_time < 0.0) {
    throw InvalidArgument("scene start_time must be finite and >= 0");
  }
  if (scene.motion.frames.empty()) throw InvalidArgument("scene motion has no frames");
  motion::validate_clip(scene.motion);
  if (scene.nuisances.humanoid.radii.size() != scene.motion.topology.size()) {
    throw InvalidArgument("humanoid radii count " +
                          std::to_string(scene.nuisances.humanoid.radii.size()) +
                          " does not match motion topology size " +
                          std::to_string(scene.motion.topology.size()));
  }
  const RenderSettings& s = scene.settings;
  if (!(s.gamma > 0.0) || !(s.sensor_noise >= 0.0) || !(s.floor_texels_per_meter > 0.0)) {
    throw InvalidArgument("invalid render settings");
  }
}

Image FrameBuffer::image() const {
  Image img(width, height, 3);
  img.pixels = rgb;
  return img;
}

double ray_capsule(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                   double radius, double t_min) {
  double best = kInf;
  const auto consider = [&](double t) {
    if (t > t_min && t < best) best = t;
  };
  const Vec3 ba = b - a;
  const Vec3 oa = origin - a;
  const double baba = ba.dot(ba);
  const double bard = ba.dot(dir);
  const double baoa = ba.dot(oa);
  const double dd = dir.dot(dir);
  const double r2 = radius * radius;
  // Slack so that rays grazing the cylinder/cap seam hit at least one part.
  const double slack = 1e-9 * baba;
  if (baba > 0.0) {
    const double qa = baba * dd - bard * bard;
    const double qb = baba * dir.dot(oa) - baoa * bard;
    const double qc = baba * oa.dot(oa) - baoa * baoa - r2 * baba;
    if (qa > 0.0) {
      const double disc = qb * qb - qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (double t : {(-qb - sq) / qa, (-qb + sq) / qa}) {
          const double y = baoa + t * bard;
          if (y >= -slack && y <= baba + slack) consider(t);
        }
      }
    }
  }
  const auto sphere = [&](const Vec3& center, bool at_a) {
    const Vec3 oc = origin - center;
    const double hb = dir.dot(oc);
    const double disc = hb * hb - dd * (oc.dot(oc) - r2);
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (double t : {(-hb - sq) / dd, (-hb + sq) / dd}) {
      const double y = baoa + t * bard;
      if (at_a ? y <= slack : y >= baba - slack) consider(t);
    }
  };
  sphere(a, true);
  sphere(b, false);
  return best;
}

SceneTextures resolve_textures(const randomize::TextureAssignment& refs, TextureCache* cache) {
  const auto get = [cache](const std::string& ref) {
    return cache ? cache->get(ref) : std::make_shared<const Texture>(load_texture(ref));
  };
  return {get(refs.sky), get(refs.floor), get(refs.body)};
}

RenderedFrame rasterize_frame(const SceneDescription& scene, const motion::Pose& pose,
                              const CameraModel& camera, const SceneTextures& textures) {
  const motion::SkeletonTopology& topo = scene.motion.topology;
  const int w = camera.intrinsics.width;
  const int h = camera.intrinsics.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  RenderedFrame out;
  FrameBuffer& fb = out.frame;
  fb.width = w;
  fb.height = h;
  fb.rgb.assign(3 * n, 0);
  fb.depth.assign(n, std::numeric_limits<float>::infinity());
  draw_background(scene, camera, textures, fb);

  const motion::WorldPose world = motion::forward_kinematics_world(topo, pose);
  const std::vector<double>& radii = scene.nuisances.humanoid.radii;
  GroundtruthFrame& gt = out.groundtruth;
  gt.bone_ids.assign(n, -1);
  const std::vector<Capsule> capsules = build_capsules(topo, world, radii);
  for (const Capsule& c : capsules) {
    draw_capsule(scene, camera, *textures.body, c, fb, gt.bone_ids);
  }

  gt.mask = Image(w, h, 1);
  for (std::size_t i = 0; i < n; ++i) gt.mask.pixels[i] = gt.bone_ids[i] >= 0 ? 255 : 0;

  gt.joints.resize(topo.size());
  for (std::size_t j = 0; j < topo.size(); ++j) {
    JointLabel& label = gt.joints[j];
    const auto proj = project(camera, world.positions[j]);
    if (!proj) continue;
    label.in_front = true;
    label.pixel = proj->pixel;
    label.depth = proj->depth;
    if (proj->pixel.x() < 0 || proj->pixel.y() < 0 || proj->pixel.x() >= w ||
        proj->pixel.y() >= h) {
      continue;
    }
    label.visible = !line_of_sight_blocked(camera.position, world.positions[j], capsules);
  }
  return out;
}

RenderedFrame rasterize_frame(const SceneDescription& scene, const motion::Pose& pose,
                              const CameraModel& camera) {
  return rasterize_frame(scene, pose, camera, resolve_textures(scene.nuisances.textures));
}

void post_process(const RenderSettings& settings, int frame_index, FrameBuffer& frame) {
  const auto& gain = settings.color_gain;
  const bool tone = settings.gamma != 1.0 || gain[0] != 1.0 || gain[1] != 1.0 || gain[2] != 1.0;
  if (tone) {
    std::array<std::array<std::uint8_t, 256>, 3> lut{};
    for (int c = 0; c < 3; ++c) {
      for (int v = 0; v < 256; ++v) {
        const double x = std::min(1.0, gain[c] * v / 255.0);
        lut[c][v] = static_cast<std::uint8_t>(
            std::clamp(std::lround(255.0 * std::pow(x, 1.0 / settings.gamma)), 0L, 255L));
      }
    }
    for (std::size_t i = 0; i < frame.rgb.size(); ++i) frame.rgb[i] = lut[i % 3][frame.rgb[i]];
  }
  if (settings.sensor_noise > 0.0) {
    randomize::Pcg32 rng(randomize::mix64(settings.noise_seed),
                         static_cast<std::uint64_t>(frame_index));
    for (std::uint8_t& v : frame.rgb) {
      const double noisy = v + settings.sensor_noise * (2.0 * rng.uniform01() - 1.0);
      v = static_cast<std::uint8_t>(std::clamp(std::lround(noisy), 0L, 255L));
    }
  }
}

}  // namespace rsa::render
