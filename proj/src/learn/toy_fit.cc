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


#include "rsa/learn/toy_fit.h"

#include <cmath>
#include <string>

#include "rsa/common/error.h"

namespace rsa::learn {

FeatureVector toy_embedding(int observation, int observation_count) {
  if (observation_count < 2 || observation < 0 || observation >= observation_count) {
    throw InvalidArgument("toy observation " + std::to_string(observation) + " out of range");
  }
  const double k = static_cast<double>(observation_count);
  FeatureVector f(static_cast<std::size_t>(observation_count), -1.0 / std::sqrt(k - 1.0));
  f[static_cast<std::size_t>(observation)] = std::sqrt(k - 1.0);
  return f;
}

ToyFit fit_toy_classifier(const genmodel::ToyGenerativeModel& model,
                          std::span<const genmodel::ToyDraw> draws, const ToyFitConfig& config) {
  model.validate();
  if (draws.empty()) throw InvalidArgument("toy fit needs at least one draw");
  const int k = model.observation_count;
  const std::size_t actions = model.p_action.size();

  DomainDataset ds;
  ds.domain = "toy";
  for (std::size_t a = 0; a < actions; ++a) ds.classes.push_back("a" + std::to_string(a));
  std::vector<std::vector<double>> counts(static_cast<std::size_t>(k),
                                          std::vector<double>(actions, 0.0));
  for (const genmodel::ToyDraw& d : draws) {
    ds.features.push_back(toy_embedding(d.observation, k));
    ds.labels.push_back(d.action);
    counts[static_cast<std::size_t>(d.observation)][static_cast<std::size_t>(d.action)] += 1.0;
  }

  TrainConfig tc;
  tc.strategy = Strategy::kRealOnly;
  tc.learning_rate = config.learning_rate;
  tc.finetune_learning_rate = default_finetune_rate(config.learning_rate);
  tc.batch_size = static_cast<int>(draws.size());
  tc.epochs = config.epochs;
  tc.shape.hidden = config.hidden;
  tc.shape.latent = config.latent;
  tc.seed = config.seed;
  TrainedModel trained = train(tc, TrainingData{nullptr, &ds});

  ToyFit fit;
  fit.classifier = std::move(trained.classifier);
  for (int x = 0; x < k; ++x) {
    const FeatureVector f = toy_embedding(x, k);
    fit.posterior.push_back(classifier_forward(fit.classifier, f).probabilities);
    std::vector<double>& row = counts[static_cast<std::size_t>(x)];
    double total = 0.0;
    for (double c : row) total += c;
    if (total > 0.0) {
      for (double& c : row) c /= total;
    } else {
      row.clear();
    }
    fit.empirical.push_back(row);
  }
  return fit;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace rsa::learn
