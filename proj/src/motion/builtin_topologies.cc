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

#include "rsa/motion/builtin_topologies.h"

#include <array>

#include "rsa/common/error.h"

namespace rsa::motion {
namespace {

struct JointSpec {
  const char* name;
  int parent;
  double x, y, z;
  int kinect_id;
};

// Depth-first order so BVH output keeps the same joint order.
constexpr std::array<JointSpec, 25> kKinectJoints{{
    {"SpineBase", -1, 0.0, 0.0, 0.0, 0},
    {"SpineMid", 0, 0.0, 0.25, 0.0, 1},
    {"SpineShoulder", 1, 0.0, 0.25, 0.0, 20},
    {"Neck", 2, 0.0, 0.08, 0.0, 2},
    {"Head", 3, 0.0, 0.15, 0.0, 3},
    {"ShoulderLeft", 2, 0.18, -0.03, 0.0, 4},
    {"ElbowLeft", 5, 0.28, 0.0, 0.0, 5},
    {"WristLeft", 6, 0.25, 0.0, 0.0, 6},
    {"HandLeft", 7, 0.08, 0.0, 0.0, 7},
    {"HandTipLeft", 8, 0.08, 0.0, 0.0, 21},
    {"ThumbLeft", 7, 0.05, 0.0, 0.04, 22},
    {"ShoulderRight", 2, -0.18, -0.03, 0.0, 8},
    {"ElbowRight", 11, -0.28, 0.0, 0.0, 9},
    {"WristRight", 12, -0.25, 0.0, 0.0, 10},
    {"HandRight", 13, -0.08, 0.0, 0.0, 11},
    {"HandTipRight", 14, -0.08, 0.0, 0.0, 23},
    {"ThumbRight", 13, -0.05, 0.0, 0.04, 24},
    {"HipLeft", 0, 0.09, -0.05, 0.0, 12},
    {"KneeLeft", 17, 0.0, -0.43, 0.0, 13},
    {"AnkleLeft", 18, 0.0, -0.42, 0.0, 14},
    {"FootLeft", 19, 0.0, -0.05, 0.12, 15},
    {"HipRight", 0, -0.09, -0.05, 0.0, 16},
    {"KneeRight", 21, 0.0, -0.43, 0.0, 17},
    {"AnkleRight", 22, 0.0, -0.42, 0.0, 18},
    {"FootRight", 23, 0.0, -0.05, 0.12, 19},
}};

BuiltinTopology make_kinect25() {
  std::vector<Joint> joints;
  std::vector<std::size_t> external(kKinectJoints.size());
  for (std::size_t i = 0; i < kKinectJoints.size(); ++i) {
    const JointSpec& s = kKinectJoints[i];
    Joint j;
    j.name = s.name;
    if (s.parent >= 0) j.parent = static_cast<std::size_t>(s.parent);
    j.rest_offset = Vec3(s.x, s.y, s.z);
    joints.push_back(std::move(j));
    external[static_cast<std::size_t>(s.kinect_id)] = i;
  }
  return {"kinect25", SkeletonTopology(std::move(joints)), std::move(external)};
}

}  // namespace

const BuiltinTopology& kinect25() {
  static const BuiltinTopology topology = make_kinect25();
  return topology;
}

std::vector<std::string> builtin_topology_names() { return {"kinect25"}; }

const BuiltinTopology& builtin_topology(std::string_view name) {
  if (name == "kinect25") return kinect25();
  std::string known;
  for (const std::string& n : builtin_topology_names()) {
    known += (known.empty() ? "" : ", ") + n;
  }
  throw InvalidArgument("unknown topology '" + std::string(name) +
                        "' (available: " + known + ")");
}

}  // namespace rsa::motion
