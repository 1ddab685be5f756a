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

#ifndef RSA_MOTION_SKELETON_H_
#define RSA_MOTION_SKELETON_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rsa::motion {

// World frame: right-handed, Y up, meters.
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

struct Joint {
  std::string name;
  std::optional<std::size_t> parent;  // nullopt for the root
  Vec3 rest_offset = Vec3::Zero();    // from the parent joint, parent frame
  bool end_site = false;              // BVH "End Site": no channels
};

// Joint hierarchy in topological order (parents precede children). The
// constructor enforces the invariants and throws InvalidArgument otherwise:
// one root at index 0, unique names, nonzero offsets except for end sites.
class SkeletonTopology {
 public:
  explicit SkeletonTopology(std::vector<Joint> joints);
  // A lone root joint named "root".
  SkeletonTopology();

  std::size_t size() const { return joints_.size(); }
  const Joint& joint(std::size_t i) const { return joints_[i]; }
  const std::vector<Joint>& joints() const { return joints_; }
  const std::vector<std::size_t>& children(std::size_t i) const {
    return children_[i];
  }
  std::optional<std::size_t> find(std::string_view name) const;

  // Joints that carry rotation channels, i.e. everything but end sites.
  std::size_t channel_joint_count() const;

  // Vertical extent of the rest pose (root at the origin, all rotations
  // identity): max y - min y over joint positions.
  double height() const;

  // Copy with every rest offset multiplied by `factor`.
  SkeletonTopology scaled(double factor) const;

  friend bool operator==(const SkeletonTopology& a, const SkeletonTopology& b);

 private:
  std::vector<Joint> joints_;
  std::vector<std::vector<std::size_t>> children_;
};

struct Pose {
  Vec3 root_translation = Vec3::Zero();  // world position of the root joint
  std::vector<Quat> local_rotations;     // one per joint, parent frame
};

// World-space joint positions, one per topology joint.
using JointPositions = std::vector<Vec3>;

struct MotionClip {
  SkeletonTopology topology;
  double frame_time = 1.0 / 30.0;  // seconds
  std::vector<Pose> frames;

  std::size_t frame_count() const { return frames.size(); }
  double duration() const { return frame_time * static_cast<double>(frames.size()); }
};

// Tolerance for "proper rotation": | |q| - 1 | below this.
inline constexpr double kUnitQuaternionTolerance = 1e-6;

// Describes the first invariant violation of `clip`, or nullopt when valid.
std::optional<std::string> find_clip_violation(const MotionClip& clip);

// Throws InvalidArgument carrying find_clip_violation's message.
void validate_clip(const MotionClip& clip);

// A pose with identity rotations and the given root position.
Pose rest_pose(const SkeletonTopology& topology,
               const Vec3& root_translation = Vec3::Zero());

}  // namespace rsa::motion

#endif  // RSA_MOTION_SKELETON_H_
