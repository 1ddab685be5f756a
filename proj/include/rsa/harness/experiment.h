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


#ifndef RSA_HARNESS_EXPERIMENT_H_
#define RSA_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsa/genmodel/actions.h"
#include "rsa/genmodel/dataset.h"
#include "rsa/harness/split.h"
#include "rsa/learn/features.h"
#include "rsa/learn/train.h"

namespace rsa::harness {

// Pseudo-real versus randomized-synthetic comparison at desk scale. The
// pseudo-real domain has narrow viewpoints, a small texture pool, one body
// shape, post-processing and its own motion library; its test sets are
// disjoint in azimuth and texture.
struct OrderingConfig {
  std::vector<std::string> classes = {};  // empty: every procedural action
  int train_per_class = 40;
  int test_per_class = 40;
  int reduced_divisor = 4;
  // Held-out azimuth bands of increasing width; test textures come from a
  // pool disjoint from training.
  std::vector<AzimuthBand> test_bands = {{30.0, 50.0}, {30.0, 70.0}, {30.0, 90.0}};
  std::size_t primary_band = 1;  // band used for the strategy comparison
  int test_texture_first = 103;
  int synthetic_ratio = genmodel::kSyntheticToRealRatio;
  randomize::NuisanceConfig synthetic_nuisances = randomize::default_nuisance_config();
  int frame_count = 32;
  int width = 160;
  int height = 120;
  double fov_deg = 45.0;
  int library_clips = 4;
  // Performer styles of the two motion libraries.
  genmodel::ActorRanges synthetic_actors;
  genmodel::ActorRanges real_actors;
  learn::FeatureConfig features;
  learn::TrainConfig train;  // strategy and seed are set per run
  int single_domain_epochs = 0;  // real-only and synthetic-only; 0 = train.epochs
};

OrderingConfig default_ordering_config();
nlohmann::json to_json(const OrderingConfig& config);

struct OrderingSeedResult {
  std::uint64_t seed = 0;
  // Test accuracy per band.
  std::vector<double> real_only;
  std::vector<double> synthetic_only;
  std::vector<double> finetune;
  std::vector<double> adversarial;
  std::vector<double> real_only_reduced;
  std::vector<double> finetune_reduced;
  std::size_t primary_band = 0;
  std::size_t train_videos = 0;
  std::size_t synthetic_videos = 0;
  std::size_t discarded = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

OrderingSeedResult run_ordering_seed(const OrderingConfig& config, std::uint64_t seed,
                                     const ProgressFn& progress = {});

struct OrderingSummary {
  int finetune_wins = 0;      // seeds where finetune beats real-only
  int adversarial_wins = 0;   // seeds where adversarial beats real-only
  int synthetic_lowest = 0;   // seeds where synthetic-only is strictly lowest
  int reduced_smaller_drop = 0;
  std::vector<double> mean_real_only;  // per band
  bool real_only_monotonic = false;    // mean accuracy strictly decreasing
};

OrderingSummary summarize(const std::vector<OrderingSeedResult>& results);

}  // namespace rsa::harness

#endif  // RSA_HARNESS_EXPERIMENT_H_
