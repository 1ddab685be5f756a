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


#ifndef RSA_GENMODEL_MOTION_LIBRARY_H_
#define RSA_GENMODEL_MOTION_LIBRARY_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rsa/motion/skeleton.h"
#include "rsa/randomize/rng.h"

namespace rsa::genmodel {

struct LibraryClip {
  std::string id;
  motion::MotionClip clip;
};

// Action label -> motion clips. Each action holds at least one valid clip;
// clip ids are unique within an action.
class MotionLibrary {
 public:
  // Validates the clip; throws InvalidArgument on an invalid clip or a
  // duplicate id.
  void add(const std::string& action, std::string id, motion::MotionClip clip);

  std::vector<std::string> labels() const;  // sorted
  bool contains(std::string_view action) const;
  std::size_t size() const;  // total clips

  // Throws InvalidArgument listing the available labels when unknown.
  const std::vector<LibraryClip>& clips(std::string_view action) const;
  const LibraryClip& clip(std::string_view action, std::string_view id) const;

 private:
  std::map<std::string, std::vector<LibraryClip>, std::less<>> clips_;
};

// Uniform draw over the action's clips (one bounded draw from the stream).
const LibraryClip& sample_motion(const MotionLibrary& library, std::string_view action,
                                 randomize::RngStream& stream);

// Directory layout: <dir>/<action>/<clip id>.bvh. Actions and clips are
// loaded in name order.
MotionLibrary load_motion_library(const std::filesystem::path& dir);
void save_motion_library(const MotionLibrary& library, const std::filesystem::path& dir);

}  // namespace rsa::genmodel

#endif  // RSA_GENMODEL_MOTION_LIBRARY_H_
