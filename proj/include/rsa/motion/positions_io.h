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

#ifndef RSA_MOTION_POSITIONS_IO_H_
#define RSA_MOTION_POSITIONS_IO_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsa/motion/builtin_topologies.h"
#include "rsa/motion/skeleton.h"

namespace rsa::motion {

// Captured joint positions for one clip.
//
// Text grammar (one record per line, fields separated by spaces or tabs):
//
//   file    := header { line }
//   header  := "frame_time" SEP seconds EOL
//   line    := frame SEP joint SEP x SEP y SEP z EOL
//            | blank EOL
//            | "#" any EOL
//
// `frame` is a 0-based frame index and `joint` the external joint index of
// the chosen topology (Kinect v2 JointType for kinect25). Coordinates are
// world meters, Y up. Lines may appear in any order, but every frame in
// [0, max frame] must list every joint exactly once.
struct PositionSequence {
  double frame_time = 1.0 / 30.0;
  std::vector<JointPositions> frames;  // indexed by topology joint index
};

// Throws ParseError with the offending line number.
PositionSequence parse_positions(std::string_view text,
                                 const BuiltinTopology& topology);
std::string write_positions(const PositionSequence& sequence,
                            const BuiltinTopology& topology);

PositionSequence read_positions_file(const std::filesystem::path& path,
                                     const BuiltinTopology& topology);

}  // namespace rsa::motion

#endif  // RSA_MOTION_POSITIONS_IO_H_
