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

#include "rsa/motion/kinematics.h"

#include <Eigen/SVD>

#include "rsa/common/error.h"

namespace rsa::motion {
namespace {

// Observed bones shorter than this are treated as coincident joints.
constexpr double kMinBoneLength = 1e-9;
// Unit rest directions whose cross product is below this are collinear.
constexpr double kCollinearTolerance = 1e-6;

void check_pose_size(const SkeletonTopology& topology, const Pose& pose) {
  if (pose.local_rotations.size() != topology.size()) {
    throw InvalidArgument("pose has " +
                          std::to_string(pose.local_rotations.size()) +
                          " rotations for a " + std::to_string(topology.size()) +
                          "-joint skeleton");
  }
}

struct BoneConstraint {
  Vec3 rest;      // unit rest direction in the joint frame
  Vec3 observed;  // unit observed direction in the parent's solved frame
  double rest_length;
};

Quat solve_joint_rotation(const std::vector<BoneConstraint>& bones) {
  if (bones.empty()) return Quat::Identity();

  std::size_t longest = 0;
  bool collinear = true;
  for (std::size_t k = 0; k < bones.size(); ++k) {
    if (bones[k].rest_length > bones[longest].rest_length) longest = k;
  }
  for (const BoneConstraint& b : bones) {
    if (b.rest.cross(bones[longest].rest).norm() > kCollinearTolerance) {
      collinear = false;
      break;
    }
  }
  if (collinear) {
    return Quat::FromTwoVectors(bones[longest].rest, bones[longest].observed)
        .normalized();
  }

  // Wahba's problem: maximize sum_k observed_k . (R rest_k).
  Eigen::Matrix3d b = Eigen::Matrix3d::Zero();
  for (const BoneConstraint& bone : bones) b += bone.observed * bone.rest.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  Eigen::Matrix3d fix = Eigen::Matrix3d::Identity();
  fix(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return Quat(Eigen::Matrix3d(u * fix * v.transpose())).normalized();
}

}  // namespace

WorldPose forward_kinematics_world(const SkeletonTopology& topology,
                                   const Pose& pose) {
  check_pose_size(topology, pose);
  WorldPose world;
  world.positions.resize(topology.size());
  world.rotations.resize(topology.size());
  for (std::size_t i = 0; i < topology.size(); ++i) {
    const Joint& joint = topology.joint(i);
    if (!joint.parent) {
      world.positions[i] = pose.root_translation;
      world.rotations[i] = pose.local_rotations[i];
      continue;
    }
    const std::size_t p = *joint.parent;
    world.positions[i] = world.positions[p] + world.rotations[p] * joint.rest_offset;
    world.rotations[i] = world.rotations[p] * pose.local_rotations[i];
  }
  return world;
}

JointPositions forward_kinematics(const SkeletonTopology& topology,
                                  const Pose& pose) {
  return forward_kinematics_world(topology, pose).positions;
}

MotionClip positions_to_local_rotations(const SkeletonTopology& topology,
                                        const std::vector<JointPositions>& sequence,
                                        double frame_time) {
  if (sequence.empty()) throw InvalidArgument("position sequence is empty");
  if (!(frame_time > 0.0)) throw InvalidArgument("frame time must be positive");

  MotionClip clip{topology, frame_time, {}};
  clip.frames.reserve(sequence.size());
  std::vector<Quat> world(topology.size());
  std::vector<BoneConstraint> bones;

  for (std::size_t f = 0; f < sequence.size(); ++f) {
    const JointPositions& observed = sequence[f];
    if (observed.size() != topology.size()) {
      throw InvalidArgument("frame " + std::to_string(f) + " has " +
                            std::to_string(observed.size()) + " joints, expected " +
                            std::to_string(topology.size()));
    }
    for (std::size_t j = 0; j < observed.size(); ++j) {
      if (!observed[j].allFinite()) {
        throw InvalidArgument("frame " + std::to_string(f) + ", joint '" +
                              topology.joint(j).name + "': non-finite position");
      }
    }

    Pose pose = rest_pose(topology, observed[0]);
    for (std::size_t j = 0; j < topology.size(); ++j) {
      const Joint& joint = topology.joint(j);
      const Quat parent_world = joint.parent ? world[*joint.parent] : Quat::Identity();
      if (joint.end_site) {
        world[j] = parent_world;
        continue;
      }
      bones.clear();
      const Quat to_parent = parent_world.conjugate();
      for (std::size_t c : topology.children(j)) {
        const Vec3 delta = observed[c] - observed[j];
        const double length = delta.norm();
        if (length < kMinBoneLength) {
          if (topology.joint(c).end_site) continue;
          throw InvalidArgument("frame " + std::to_string(f) + ", joint '" +
                                topology.joint(c).name +
                                "' coincides with its parent '" + joint.name + "'");
        }
        const double rest_length = topology.joint(c).rest_offset.norm();
        if (rest_length <= 0.0) continue;
        bones.push_back({topology.joint(c).rest_offset / rest_length,
                         to_parent * (delta / length), rest_length});
      }
      pose.local_rotations[j] = solve_joint_rotation(bones);
      world[j] = (parent_world * pose.local_rotations[j]).normalized();
    }
    clip.frames.push_back(std::move(pose));
  }
  return clip;
}

MotionClip rescale_to_topology(const MotionClip& clip,
                               const SkeletonTopology& target) {
  const SkeletonTopology& source = clip.topology;
  const std::size_t n = std::min(source.size(), target.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Joint& a = source.joint(i);
    const Joint& b = target.joint(i);
    if (a.name != b.name || a.parent != b.parent || a.end_site != b.end_site) {
      throw InvalidArgument("joint " + std::to_string(i) + " mismatch: source '" +
                            a.name + "' vs target '" + b.name + "'");
    }
  }
  if (source.size() != target.size()) {
    throw InvalidArgument("joint count mismatch: source has " +
                          std::to_string(source.size()) + ", target has " +
                          std::to_string(target.size()));
  }
  if (!(source.height() > 0.0)) {
    throw InvalidArgument("source skeleton has zero height");
  }
  const double ratio = target.height() / source.height();
  MotionClip out{target, clip.frame_time, clip.frames};
  for (Pose& pose : out.frames) pose.root_translation *= ratio;
  return out;
}

}  // namespace rsa::motion
