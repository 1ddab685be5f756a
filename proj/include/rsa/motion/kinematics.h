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

#ifndef RSA_MOTION_KINEMATICS_H_
#define RSA_MOTION_KINEMATICS_H_

#include <vector>

#include "rsa/motion/skeleton.h"

namespace rsa::motion {

struct WorldPose {
  JointPositions positions;
  std::vector<Quat> rotations;  // world orientation of each joint's frame
};

// Root at (root rotation, root_translation); every other joint sits at its
// parent's world transform applied to its rest offset.
JointPositions forward_kinematics(const SkeletonTopology& topology,
                                  const Pose& pose);
WorldPose forward_kinematics_world(const SkeletonTopology& topology,
                                   const Pose& pose);

// Converts observed joint positions into local rotations, one frame at a
// time. Each joint's rotation maps the rest directions of its child bones
// onto the observed directions, expressed in the parent's solved frame:
//   - one child (or collinear children): shortest-arc rotation, zero twist;
//   - several non-collinear children: best-fit rotation over all of them.
// Joints without children keep the identity. Bone lengths come from the
// topology, so FK reproduces the input up to per-bone rescaling.
//
// Throws InvalidArgument when a non-end-site child coincides with its parent
// in some frame, naming the frame and joint.
MotionClip positions_to_local_rotations(const SkeletonTopology& topology,
                                        const std::vector<JointPositions>& sequence,
                                        double frame_time);

// Drives a differently proportioned skeleton with the same motion: rotations
// are copied and the root trajectory is scaled by the height ratio. Joint
// names and parents must agree; throws InvalidArgument on the first mismatch.
MotionClip rescale_to_topology(const MotionClip& clip,
                               const SkeletonTopology& target);

}  // namespace rsa::motion

#endif  // RSA_MOTION_KINEMATICS_H_
