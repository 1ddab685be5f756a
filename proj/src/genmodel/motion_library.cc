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


#include "rsa/genmodel/motion_library.h"

#include <algorithm>

#include "rsa/common/error.h"
#include "rsa/motion/bvh.h"

namespace rsa::genmodel {

namespace fs = std::filesystem;

void MotionLibrary::add(const std::string& action, std::string id, motion::MotionClip clip) {
  if (action.empty() || id.empty()) throw InvalidArgument("action and clip id must be nonempty");
  if (auto violation = motion::find_clip_violation(clip)) {
    throw InvalidArgument("clip '" + action + "/" + id + "': " + *violation);
  }
  std::vector<LibraryClip>& list = clips_[action];
  for (const LibraryClip& c : list) {
    if (c.id == id) throw InvalidArgument("duplicate clip '" + action + "/" + id + "'");
  }
  list.push_back({std::move(id), std::move(clip)});
}

std::vector<std::string> MotionLibrary::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, list] : clips_) out.push_back(label);
  return out;
}

bool MotionLibrary::contains(std::string_view action) const {
  return clips_.find(action) != clips_.end();
}

std::size_t MotionLibrary::size() const {
  std::size_t n = 0;
  for (const auto& [label, list] : clips_) n += list.size();
  return n;
}

const std::vector<LibraryClip>& MotionLibrary::clips(std::string_view action) const {
  const auto it = clips_.find(action);
  if (it == clips_.end()) {
    std::string known;
    for (const std::string& l : labels()) known += (known.empty() ? "" : ", ") + l;
    throw InvalidArgument("unknown action '" + std::string(action) + "' (available: " +
                          (known.empty() ? "none" : known) + ")");
  }
  return it->second;
}

const LibraryClip& MotionLibrary::clip(std::string_view action, std::string_view id) const {
  for (const LibraryClip& c : clips(action)) {
    if (c.id == id) return c;
  }
  throw InvalidArgument("action '" + std::string(action) + "' has no clip '" +
                        std::string(id) + "'");
}

const LibraryClip& sample_motion(const MotionLibrary& library, std::string_view action,
                                 randomize::RngStream& stream) {
  const std::vector<LibraryClip>& list = library.clips(action);
  return list[stream.engine.bounded(static_cast<std::uint32_t>(list.size()))];
}

MotionLibrary load_motion_library(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("motion library " + dir.string() + " does not exist");
  std::vector<fs::path> actions;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) actions.push_back(entry.path());
  }
  std::sort(actions.begin(), actions.end());
  MotionLibrary library;
  for (const fs::path& action : actions) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(action)) {
      if (entry.is_regular_file() && entry.path().extension() == ".bvh") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      library.add(action.filename().string(), file.stem().string(),
                  motion::read_bvh_file(file));
    }
  }
  if (library.size() == 0) throw IoError("motion library " + dir.string() + " has no clips");
  return library;
}

void save_motion_library(const MotionLibrary& library, const fs::path& dir) {
  for (const std::string& action : library.labels()) {
    const fs::path sub = dir / action;
    std::error_code ec;
    fs::create_directories(sub, ec);
    if (ec) throw IoError("cannot create " + sub.string() + ": " + ec.message());
    for (const LibraryClip& c : library.clips(action)) {
      motion::write_bvh_file(sub / (c.id + ".bvh"), c.clip);
    }
  }
}

}  // namespace rsa::genmodel
