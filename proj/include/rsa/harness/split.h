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


#ifndef RSA_HARNESS_SPLIT_H_
#define RSA_HARNESS_SPLIT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rsa/genmodel/dataset.h"

namespace rsa::harness {

struct SplitSpec {
  std::vector<std::string> train;
  std::vector<std::string> test;
  // Videos in neither set: disjoint splits drop partial factor matches here.
  std::vector<std::string> excluded;
  // {"kind": "loso", "scene": ...} or {"kind": "disjoint", ...}.
  nlohmann::json criterion;
};

nlohmann::json to_json(const SplitSpec& split);
SplitSpec split_from_json(const nlohmann::json& j);
void save_split(const std::filesystem::path& path, const SplitSpec& split);
SplitSpec load_split(const std::filesystem::path& path);

// Checks train/test/excluded are pairwise disjoint and cover exactly the
// manifest ids. Throws InvalidArgument.
void check_split(const SplitSpec& split, const genmodel::DatasetManifest& manifest);

SplitSpec build_loso_split(const genmodel::DatasetManifest& manifest, std::string_view scene);

// Azimuth interval in degrees, taken modulo 360: [lo, hi] with hi >= lo and
// hi - lo <= 360.
struct AzimuthBand {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double azimuth) const;
};

// "a:b" in degrees.
AzimuthBand parse_azimuth_band(std::string_view text);

struct HeldOutFactors {
  std::vector<AzimuthBand> azimuth_bands;
  std::vector<std::string> textures;  // matched against sky, floor or body
  std::vector<std::string> humanoid_ids;
};

// Each listed factor kind is one test condition. A video goes to test when
// it meets every condition, to train when it meets none, and is excluded
// otherwise; the exclusion count is recorded in the criterion.
SplitSpec build_disjoint_split(const genmodel::DatasetManifest& manifest,
                               const HeldOutFactors& held_out);

}  // namespace rsa::harness

#endif  // RSA_HARNESS_SPLIT_H_
