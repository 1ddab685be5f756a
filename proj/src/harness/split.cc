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


#include "rsa/harness/split.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "rsa/common/error.h"

namespace rsa::harness {

namespace fs = std::filesystem;
using nlohmann::json;

json to_json(const SplitSpec& split) {
  return json{{"train", split.train},
              {"test", split.test},
              {"excluded", split.excluded},
              {"criterion", split.criterion}};
}

SplitSpec split_from_json(const json& j) {
  SplitSpec s;
  try {
    s.train = j.at("train").get<std::vector<std::string>>();
    s.test = j.at("test").get<std::vector<std::string>>();
    if (j.contains("excluded")) s.excluded = j.at("excluded").get<std::vector<std::string>>();
    s.criterion = j.value("criterion", json::object());
  } catch (const json::exception& e) {
    throw ParseError(std::string("split: ") + e.what(), 0);
  }
  return s;
}

void save_split(const fs::path& path, const SplitSpec& split) {
  std::ofstream out(path, std::ios::binary);
  out << to_json(split).dump(2) << '\n';
  if (!out) throw IoError("cannot write " + path.string());
}

SplitSpec load_split(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return split_from_json(j);
}

void check_split(const SplitSpec& split, const genmodel::DatasetManifest& manifest) {
  std::set<std::string> seen;
  for (const auto* part : {&split.train, &split.test, &split.excluded}) {
    for (const std::string& id : *part) {
      if (!seen.insert(id).second) throw InvalidArgument("video '" + id + "' appears twice");
    }
  }
  std::set<std::string> ids;
  for (const genmodel::VideoRecord& r : manifest.records) ids.insert(r.video_id);
  if (seen != ids) throw InvalidArgument("split does not cover the manifest ids exactly");
}

SplitSpec build_loso_split(const genmodel::DatasetManifest& manifest, std::string_view scene) {
  std::set<std::string> scenes;
  SplitSpec s;
  for (const genmodel::VideoRecord& r : manifest.records) {
    scenes.insert(r.scene_id);
    (r.scene_id == scene ? s.test : s.train).push_back(r.video_id);
  }
  if (!scenes.count(std::string(scene))) {
    std::string known;
    for (const std::string& k : scenes) known += (known.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown scene '" + std::string(scene) + "' (known: " + known + ")");
  }
  s.criterion = {{"kind", "loso"}, {"scene", scene}};
  return s;
}

bool AzimuthBand::contains(double azimuth) const {
  if (hi - lo >= 360.0) return true;
  const double offset = std::fmod(std::fmod(azimuth - lo, 360.0) + 360.0, 360.0);
  return offset <= hi - lo;
}

AzimuthBand parse_azimuth_band(std::string_view text) {
  const std::size_t colon = text.find(':', 1);
  AzimuthBand b;
  const auto number = [&](std::string_view part, double& out) {
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && end == part.data() + part.size();
  };
  if (colon == std::string_view::npos || !number(text.substr(0, colon), b.lo) ||
      !number(text.substr(colon + 1), b.hi) || !(b.hi >= b.lo) || b.hi - b.lo > 360.0) {
    throw InvalidArgument("azimuth band must be 'lo:hi' in degrees with lo <= hi, got '" +
                          std::string(text) + "'");
  }
  return b;
}

SplitSpec build_disjoint_split(const genmodel::DatasetManifest& manifest,
                               const HeldOutFactors& held_out) {
  const bool by_azimuth = !held_out.azimuth_bands.empty();
  const bool by_texture = !held_out.textures.empty();
  const bool by_humanoid = !held_out.humanoid_ids.empty();
  const int conditions = by_azimuth + by_texture + by_humanoid;
  if (conditions == 0) throw InvalidArgument("no held-out factors given");

  const auto listed = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  SplitSpec s;
  for (const genmodel::VideoRecord& r : manifest.records) {
    int met = 0;
    if (by_azimuth) {
      met += std::any_of(held_out.azimuth_bands.begin(), held_out.azimuth_bands.end(),
                         [&](const AzimuthBand& b) { return b.contains(r.nuisances.camera.azimuth); });
    }
    if (by_texture) {
      const randomize::TextureAssignment& t = r.nuisances.textures;
      met += listed(held_out.textures, t.sky) || listed(held_out.textures, t.floor) ||
             listed(held_out.textures, t.body);
    }
    if (by_humanoid) met += listed(held_out.humanoid_ids, r.humanoid_id);
    if (met == conditions) {
      s.test.push_back(r.video_id);
    } else if (met == 0) {
      s.train.push_back(r.video_id);
    } else {
      s.excluded.push_back(r.video_id);
    }
  }
  if (s.test.empty()) throw InvalidArgument("no video matches every held-out factor");
  if (s.train.empty()) throw InvalidArgument("every video matches some held-out factor");

  json bands = json::array();
  for (const AzimuthBand& b : held_out.azimuth_bands) bands.push_back({b.lo, b.hi});
  s.criterion = {{"kind", "disjoint"},
                 {"azimuth_bands", bands},
                 {"textures", held_out.textures},
                 {"humanoid_ids", held_out.humanoid_ids},
                 {"discarded", s.excluded.size()}};
  return s;
}

}  // namespace rsa::harness
