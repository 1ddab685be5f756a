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


#include "rsa/genmodel/actions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rsa/common/error.h"
#include "rsa/motion/builtin_topologies.h"
#include "rsa/motion/bvh.h"
#include "rsa/motion/kinematics.h"

namespace rsa::genmodel {
namespace {

using motion::Quat;
using motion::Vec3;

constexpr double kDeg = std::numbers::pi / 180.0;

std::size_t joint(std::string_view name) {
  return *motion::kinect25().topology.find(name);
}

Quat axis_angle(const Vec3& axis, double degrees) {
  return Quat(Eigen::AngleAxisd(degrees * kDeg, axis));
}

class PoseBuilder {
 public:
  PoseBuilder() : rot_(motion::kinect25().topology.size(), Quat::Identity()) {}

  void turn(std::string_view name, const Vec3& axis, double degrees) {
    Quat& q = rot_[joint(name)];
    q = q * axis_angle(axis, degrees);
  }
  void x(std::string_view name, double deg) { turn(name, Vec3::UnitX(), deg); }
  void y(std::string_view name, double deg) { turn(name, Vec3::UnitY(), deg); }
  void z(std::string_view name, double deg) { turn(name, Vec3::UnitZ(), deg); }

  std::vector<Quat>& rotations() { return rot_; }

 private:
  std::vector<Quat> rot_;
};

// Arms hanging at the sides, `lift` degrees above that.
void arms_down(PoseBuilder& p, double lift_left, double lift_right) {
  p.z("ShoulderLeft", -75.0 + lift_left);
  p.z("ShoulderRight", 75.0 - lift_right);
}

struct Motion {
  PoseBuilder pose;
  Vec3 shift = Vec3::Zero();  // root offset in the actor's facing frame
  double bounce = 0.0;        // lift above floor contact
};

Motion action_pose(std::string_view action, double phi, double a) {
  const double s = std::sin(phi);
  const double d = 0.5 * (1.0 - std::cos(phi));
  Motion m;
  PoseBuilder& p = m.pose;
  if (action == "wave") {
    p.z("ShoulderLeft", -75.0);
    p.z("ShoulderRight", -60.0 * a);
    p.z("ElbowRight", -30.0 - 35.0 * a * s);
    p.z("SpineMid", 3.0 * s);
  } else if (action == "squat") {
    const double k = d * a;
    p.y("ShoulderLeft", -80.0 * d);
    p.z("ShoulderLeft", -75.0 * (1.0 - d));
    p.y("ShoulderRight", 80.0 * d);
    p.z("ShoulderRight", 75.0 * (1.0 - d));
    p.x("SpineMid", 25.0 * k);
    for (const char* side : {"Left", "Right"}) {
      const std::string s_side(side);
      p.x("Hip" + s_side, -100.0 * k);
      p.x("Knee" + s_side, 120.0 * k);
      p.x("Ankle" + s_side, -20.0 * k);
    }
  } else if (action == "jumping_jack") {
    arms_down(p, 160.0 * d * a, 160.0 * d * a);
    p.z("HipLeft", 18.0 * d * a);
    p.z("HipRight", -18.0 * d * a);
    m.bounce = 0.05 * a * std::abs(s);
  } else if (action == "kick") {
    const double e = std::max(0.0, s);
    arms_down(p, 10.0, 10.0);
    p.y("ShoulderLeft", -40.0 * a * e);
    p.x("HipRight", -75.0 * a * e);
    p.x("KneeRight", 100.0 * e * (1.0 - e));
    p.x("SpineMid", -8.0 * e);
  } else if (action == "bow") {
    arms_down(p, 0.0, 0.0);
    p.x("HipLeft", -10.0 * d);
    p.x("HipRight", -10.0 * d);
    p.x("SpineMid", 55.0 * a * d);
    p.x("Neck", 15.0 * a * d);
  } else if (action == "side_step") {
    const double c = std::cos(phi);
    arms_down(p, 15.0 * std::abs(s), 15.0 * std::abs(s));
    p.z("HipLeft", 14.0 * a * std::max(0.0, c));
    p.z("HipRight", -14.0 * a * std::max(0.0, -c));
    m.shift.x() = 0.3 * a * s;
  } else {
    std::string known;
    for (const std::string& n : procedural_actions()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown procedural action '" + std::string(action) +
                          "' (available: " + known + ")");
  }
  return m;
}

// Reflection x -> -x: swaps Left/Right joints and mirrors each rotation.
void mirror(std::vector<Quat>& rot, Vec3& shift) {
  const motion::SkeletonTopology& topo = motion::kinect25().topology;
  std::vector<Quat> out(rot.size());
  for (std::size_t j = 0; j < topo.size(); ++j) {
    std::string name = topo.joint(j).name;
    if (auto pos = name.find("Left"); pos != std::string::npos) {
      name.replace(pos, 4, "Right");
    } else if (auto pos2 = name.find("Right"); pos2 != std::string::npos) {
      name.replace(pos2, 5, "Left");
    }
    const Quat& q = rot[j];
    out[*topo.find(name)] = Quat(q.w(), q.x(), -q.y(), -q.z());
  }
  rot = std::move(out);
  shift.x() = -shift.x();
}

double gaussian(randomize::Pcg32& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace

const std::vector<std::string>& procedural_actions() {
  static const std::vector<std::string> names{"wave", "squat",    "jumping_jack",
                                              "kick", "bow",      "side_step"};
  return names;
}

ActorParams sample_actor(const ActorRanges& r, randomize::Pcg32& rng) {
  ActorParams a;
  a.tempo = rng.uniform(r.tempo.min, r.tempo.max);
  a.amplitude = rng.uniform(r.amplitude.min, r.amplitude.max);
  a.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  a.facing = rng.uniform(r.facing.min, r.facing.max);
  a.mirrored = rng.bounded(2) == 1;
  a.x = rng.uniform(r.offset.min, r.offset.max);
  a.z = rng.uniform(r.offset.min, r.offset.max);
  return a;
}

motion::MotionClip synthesize_action(std::string_view action, const ActorParams& actor,
                                     int frames, double frame_time) {
  if (frames < 1) throw InvalidArgument("a clip needs at least one frame");
  const motion::SkeletonTopology& topo = motion::kinect25().topology;
  const Quat facing = axis_angle(Vec3::UnitY(), actor.facing);
  motion::MotionClip clip;
  clip.topology = topo;
  clip.frame_time = frame_time;
  for (int f = 0; f < frames; ++f) {
    const double t = f * frame_time;
    const double phi = 2.0 * std::numbers::pi * actor.tempo * t + actor.phase;
    Motion m = action_pose(action, phi, actor.amplitude);
    std::vector<Quat> rot = std::move(m.pose.rotations());
    if (actor.mirrored) mirror(rot, m.shift);
    rot[0] = facing * rot[0];

    motion::Pose pose;
    pose.local_rotations = std::move(rot);
    pose.root_translation =
        Vec3(actor.x, motion::kKinectRootHeight, actor.z) + facing * m.shift;
    double lowest = std::numeric_limits<double>::infinity();
    for (const Vec3& p : motion::forward_kinematics(topo, pose)) lowest = std::min(lowest, p.y());
    pose.root_translation.y() += m.bounce - lowest;
    clip.frames.push_back(std::move(pose));
  }
  return clip;
}

motion::MotionClip simulate_capture(const motion::MotionClip& clip, double noise,
                                    randomize::Pcg32& rng) {
  std::vector<motion::JointPositions> positions;
  positions.reserve(clip.frames.size());
  for (const motion::Pose& pose : clip.frames) {
    motion::JointPositions p = motion::forward_kinematics(clip.topology, pose);
    for (Vec3& v : p) {
      for (int k = 0; k < 3; ++k) v[k] += noise * gaussian(rng);
    }
    positions.push_back(std::move(p));
  }
  return motion::positions_to_local_rotations(clip.topology, positions, clip.frame_time);
}

MotionLibrary build_procedural_library(const ProceduralLibraryOptions& options,
                                       std::uint64_t seed) {
  if (options.clips_per_action < 1) throw InvalidArgument("clips_per_action must be >= 1");
  if (options.actions.empty()) throw InvalidArgument("no actions requested");
  MotionLibrary library;
  const std::vector<std::string>& all = procedural_actions();
  for (const std::string& action : options.actions) {
    const auto it = std::find(all.begin(), all.end(), action);
    if (it == all.end()) synthesize_action(action, {}, 1, options.frame_time);  // throws
    const auto a = static_cast<std::uint64_t>(it - all.begin());
    for (int k = 0; k < options.clips_per_action; ++k) {
      randomize::RngStream stream =
          randomize::derive_stream(seed, a * 1000 + static_cast<std::uint64_t>(k));
      const ActorParams actor = sample_actor(options.actors, stream.engine);
      const motion::MotionClip truth =
          synthesize_action(action, actor, options.frames, options.frame_time);
      const motion::MotionClip captured =
          simulate_capture(truth, options.capture_noise, stream.engine);
      library.add(action, action + "_" + std::to_string(k),
                  motion::parse_bvh(motion::write_bvh(captured)));
    }
  }
  return library;
}

}  // namespace rsa::genmodel
