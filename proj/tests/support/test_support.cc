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

#include "support/test_support.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "rsa/motion/builtin_topologies.h"
#include "rsa/motion/kinematics.h"
#include "rsa/randomize/nuisance.h"

namespace rsa::testing {

std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(RSA_TEST_FIXTURES) / relative;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("rsa_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

motion::Quat random_rotation(randomize::Pcg32& rng) {
  // Shoemake's subgroup method.
  const double u1 = rng.uniform01();
  const double u2 = 2.0 * std::numbers::pi * rng.uniform01();
  const double u3 = 2.0 * std::numbers::pi * rng.uniform01();
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return motion::Quat(a * std::sin(u2), a * std::cos(u2), b * std::sin(u3), b * std::cos(u3))
      .normalized();
}

motion::MotionClip random_clip(const motion::SkeletonTopology& topology, int frames,
                               double max_angle, randomize::Pcg32& rng) {
  motion::MotionClip clip{topology, 1.0 / 30.0, {}};
  for (int f = 0; f < frames; ++f) {
    motion::Pose pose = motion::rest_pose(topology);
    pose.root_translation =
        motion::Vec3(rng.uniform(-1, 1), rng.uniform(0.5, 1.5), rng.uniform(-1, 1));
    for (auto& q : pose.local_rotations) {
      const motion::Vec3 axis = random_rotation(rng) * motion::Vec3::UnitX();
      q = motion::Quat(Eigen::AngleAxisd(rng.uniform(-max_angle, max_angle), axis));
    }
    clip.frames.push_back(std::move(pose));
  }
  return clip;
}

double ks_uniform_statistic(std::vector<double> samples, double lo, double hi) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = std::clamp((samples[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  return d;
}

double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

render::SceneDescription standing_scene(double height, const randomize::CameraParams& camera,
                                        const std::string& sky, const std::string& floor,
                                        const std::string& body) {
  const randomize::HumanoidShape shape = randomize::template_humanoid(height, 0.05);
  const motion::SkeletonTopology topo = randomize::humanoid_topology(shape);
  const double root_height = motion::kKinectRootHeight * height / motion::kinect25().topology.height();
  render::SceneDescription scene;
  scene.action = "stand";
  scene.motion = motion::MotionClip{topo, 1.0 / 30.0,
                                    {motion::rest_pose(topo, motion::Vec3(0, root_height, 0))}};
  scene.nuisances.camera = camera;
  scene.nuisances.textures = {sky, floor, body};
  scene.nuisances.humanoid = shape;
  scene.frame_count = 1;
  return scene;
}

double segment_distance(const render::Vec3& p, const render::Vec3& a, const render::Vec3& b) {
  const render::Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + s * ab)).norm();
}

double oracle_capsule_t(const render::Vec3& o, const render::Vec3& d, const render::Vec3& a, const render::Vec3& b,
                        double radius, double t_min, double t_max) {
  const auto f = [&](double t) { return segment_distance(o + t * d, a, b) - radius; };
  const double step = 2e-3;
  double prev = t_min;
  if (f(prev) <= 0) return t_min;
  for (double t = t_min + step; t <= t_max; t += step) {
    if (f(t) <= 0) {
      double lo = prev, hi = t;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0 ? hi : lo) = mid;
      }
      return hi;
    }
    prev = t;
  }
  return std::numeric_limits<double>::infinity();
}

render::Vec3 pixel_ray(const render::CameraModel& cam, double x, double y) {
  return cam.forward() + ((x + 0.5 - cam.cx()) / cam.focal) * cam.right() +
         ((cam.cy() - (y + 0.5)) / cam.focal) * cam.up();
}

double oracle_scene_depth(const render::SceneDescription& scene, const motion::Pose& pose,
                          const render::CameraModel& cam, int x, int y) {
  const auto& topo = scene.motion.topology;
  const motion::JointPositions p = motion::forward_kinematics(topo, pose);
  const render::Vec3 d = pixel_ray(cam, x, y);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < topo.size(); ++j) {
    const double r = scene.nuisances.humanoid.radii[j];
    if (r <= 0) continue;
    best = std::min(best, oracle_capsule_t(cam.position, d, p[*topo.joint(j).parent], p[j], r,
                                           cam.intrinsics.near_plane));
  }
  return best;
}

}  // namespace rsa::testing
