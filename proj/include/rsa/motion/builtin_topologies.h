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

#ifndef RSA_MOTION_BUILTIN_TOPOLOGIES_H_
#define RSA_MOTION_BUILTIN_TOPOLOGIES_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rsa/motion/skeleton.h"

namespace rsa::motion {

// A named skeleton shipped with the library. `external_order[k]` is the
// topology index of the joint that external data (e.g. a sensor SDK) calls
// joint k; for Kinect v2 this is the JointType enumeration.
struct BuiltinTopology {
  std::string name;
  SkeletonTopology topology;
  std::vector<std::size_t> external_order;
};

// Kinect v2 25-joint skeleton in a T-pose, facing +Z, feet at y = 0 when the
// root (SpineBase) sits at kKinectRootHeight. Height 1.68 m.
const BuiltinTopology& kinect25();
inline constexpr double kKinectRootHeight = 0.95;

// Looks up a built-in by name ("kinect25"). Throws InvalidArgument listing
// the available names when unknown.
const BuiltinTopology& builtin_topology(std::string_view name);
std::vector<std::string> builtin_topology_names();

}  // namespace rsa::motion

#endif  // RSA_MOTION_BUILTIN_TOPOLOGIES_H_
