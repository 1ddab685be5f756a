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

#include "rsa/motion/skeleton.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rsa/common/error.h"

namespace rsa::motion {

SkeletonTopology::SkeletonTopology()
    : SkeletonTopology(std::vector<Joint>{Joint{"root", std::nullopt, Vec3::Zero(), false}}) {}

SkeletonTopology::SkeletonTopology(std::vector<Joint> joints)
    : joints_(std::move(joints)) {
  if (joints_.empty()) throw InvalidArgument("skeleton has no joints");
  children_.resize(joints_.size());
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& j = joints_[i];
    if (!names.insert(j.name).second) {
      throw InvalidArgument("duplicate joint name '" + j.name + "'");
    }
    if (!j.rest_offset.allFinite()) {
      throw InvalidArgument("joint '" + j.name + "' has a non-finite offset");
    }
    if (i == 0) {
      if (j.parent) throw InvalidArgument("joint 0 must be the root");
      if (j.end_site) throw InvalidArgument("the root cannot be an end site");
      continue;
    }
    if (!j.parent) {
      throw InvalidArgument("joint '" + j.name + "' is a second root");
    }
    if (*j.parent >= i) {
      throw InvalidArgument("joint '" + j.name +
                            "' does not follow its parent (topological order)");
    }
    if (joints_[*j.parent].end_site) {
      throw InvalidArgument("end site '" + joints_[*j.parent].name +
                            "' cannot have children");
    }
    if (!j.end_site && j.rest_offset.norm() <= 0.0) {
      throw InvalidArgument("joint '" + j.name + "' has a zero rest offset");
    }
    children_[*j.parent].push_back(i);
  }
}

std::optional<std::size_t> SkeletonTopology::find(std::string_view name) const {
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    if (joints_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SkeletonTopology::channel_joint_count() const {
  return static_cast<std::size_t>(
      std::count_if(joints_.begin(), joints_.end(),
                    [](const Joint& j) { return !j.end_site; }));
}

double SkeletonTopology::height() const {
  std::vector<Vec3> world(joints_.size());
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    world[i] = joints_[i].parent
                   ? Vec3(world[*joints_[i].parent] + joints_[i].rest_offset)
                   : Vec3::Zero();
    lo = std::min(lo, world[i].y());
    hi = std::max(hi, world[i].y());
  }
  return hi - lo;
}

SkeletonTopology SkeletonTopology::scaled(double factor) const {
  std::vector<Joint> joints = joints_;
  for (Joint& j : joints) j.rest_offset *= factor;
  return SkeletonTopology(std::move(joints));
}

bool operator==(const SkeletonTopology& a, const SkeletonTopology& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Joint& x = a.joints_[i];
    const Joint& y = b.joints_[i];
    if (x.name != y.name || x.parent != y.parent || x.end_site != y.end_site ||
        x.rest_offset != y.rest_offset) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> find_clip_violation(const MotionClip& clip) {
  if (!(clip.frame_time > 0.0) || !std::isfinite(clip.frame_time)) {
    return "frame time must be a positive finite number of seconds";
  }
  if (clip.frames.empty()) return "clip has no frames";
  const SkeletonTopology& topo = clip.topology;
  for (std::size_t f = 0; f < clip.frames.size(); ++f) {
    const Pose& pose = clip.frames[f];
    const std::string where = "frame " + std::to_string(f);
    if (pose.local_rotations.size() != topo.size()) {
      return where + ": expected " + std::to_string(topo.size()) +
             " rotations, got " + std::to_string(pose.local_rotations.size());
    }
    if (!pose.root_translation.allFinite()) {
      return where + ", joint '" + topo.joint(0).name +
             "': non-finite root translation";
    }
    for (std::size_t j = 0; j < topo.size(); ++j) {
      const Quat& q = pose.local_rotations[j];
      if (!q.coeffs().allFinite()) {
        return where + ", joint '" + topo.joint(j).name +
               "': non-finite rotation";
      }
      if (std::abs(q.norm() - 1.0) > kUnitQuaternionTolerance) {
        return where + ", joint '" + topo.joint(j).name +
               "': rotation is not a unit quaternion";
      }
    }
  }
  return std::nullopt;
}

void validate_clip(const MotionClip& clip) {
  if (auto violation = find_clip_violation(clip)) {
    throw InvalidArgument(*violation);
  }
}

Pose rest_pose(const SkeletonTopology& topology, const Vec3& root_translation) {
  Pose pose;
  pose.root_translation = root_translation;
  pose.local_rotations.assign(topology.size(), Quat::Identity());
  return pose;
}

}  // namespace rsa::motion
