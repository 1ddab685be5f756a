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


#ifndef RSA_LEARN_TOY_FIT_H_
#define RSA_LEARN_TOY_FIT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rsa/genmodel/toy_model.h"
#include "rsa/learn/train.h"

namespace rsa::learn {

// Observation symbol x of K as a one-hot vector shifted and scaled to zero
// mean and unit variance over its components.
FeatureVector toy_embedding(int observation, int observation_count);

struct ToyFitConfig {
  int epochs = 400;
  double learning_rate = 2.0;
  std::size_t hidden = 16;
  std::size_t latent = 8;
  std::uint64_t seed = 0;
};

struct ToyFit {
  ClassifierModel classifier;
  // [x][a]: classifier output and observed label frequencies for symbol x.
  std::vector<std::vector<double>> posterior;
  std::vector<std::vector<double>> empirical;
};

// Full-batch real-only training on the embedded draws. Symbols never drawn
// get an empty empirical row.
ToyFit fit_toy_classifier(const genmodel::ToyGenerativeModel& model,
                          std::span<const genmodel::ToyDraw> draws, const ToyFitConfig& config);

double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace rsa::learn

#endif  // RSA_LEARN_TOY_FIT_H_
