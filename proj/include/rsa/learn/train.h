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


#ifndef RSA_LEARN_TRAIN_H_
#define RSA_LEARN_TRAIN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsa/learn/model.h"
#include "rsa/randomize/rng.h"

namespace rsa::learn {

enum class Strategy { kRealOnly, kSyntheticOnly, kJoint, kFinetune, kAdversarial };

// "real-only", "synthetic-only", "joint", "finetune", "adversarial".
std::string strategy_name(Strategy strategy);
Strategy parse_strategy(std::string_view name);

struct TrainConfig {
  Strategy strategy = Strategy::kJoint;
  double learning_rate = 0.05;           // single-stage and pretraining rate
  double finetune_learning_rate = 0.005; // second stage of kFinetune
  double discriminator_learning_rate = 0.05;
  double lambda_adv = 0.1;
  int discriminator_steps = 1;  // discriminator updates per model update
  int batch_size = 32;
  int epochs = 20;
  int finetune_epochs = 20;
  ModelShape shape;
  std::uint64_t seed = 0;

  // finetune_learning_rate < learning_rate, positive rates and sizes,
  // lambda_adv >= 0. Throws InvalidArgument.
  void validate() const;
};

// The finetuning rate implied by a pretraining rate.
inline double default_finetune_rate(double learning_rate) { return learning_rate / 10.0; }

struct LossRecord {
  int step = 0;
  std::string phase;  // pretrain, finetune, train, discriminator, model
  double cls = 0.0;
  std::optional<double> adv;
};

struct TrainedModel {
  ClassifierModel classifier;
  std::optional<DiscriminatorModel> discriminator;
  std::vector<LossRecord> curve;
};

// Losses seen by one alternating step: before the discriminator update and
// after it (the point where the classifier gradient is taken).
struct StepLog {
  Losses before;
  Losses after_discriminator;
};

// One round of the minimax game on a (source, target) batch pair: the
// discriminator ascends L_adv with f frozen (config.discriminator_steps
// times), then f descends L_cls + lambda_adv * L_adv with D frozen.
StepLog alternating_step(ClassifierModel& model, DiscriminatorModel& discriminator,
                         const Batch& source, const Batch& target, const TrainConfig& config);

// Plain SGD step of L_cls on the concatenation of `batches`; returns L_cls
// before the update.
double classification_step(ClassifierModel& model, std::span<const Batch> batches,
                           double learning_rate);

struct TrainingData {
  const DomainDataset* synthetic = nullptr;  // source domain
  const DomainDataset* real = nullptr;       // target domain
};

// Random streams, all keyed by mix64(config.seed): stream 0 initializes f,
// stream 1 initializes D, stream 2 draws the batch schedule.
//
// Schedules: a single domain is reshuffled every epoch and cut into batches
// of batch_size (the last one may be short). With two domains, every batch
// takes batch_size / 2 examples from the source and the rest from the
// target, each domain walking its own shuffled order and reshuffling when
// it runs out; an epoch is ceil((|S| + |T|) / batch_size) steps.
//
// Throws InvalidArgument when a dataset the strategy needs is missing, when
// the datasets disagree on classes or dimension, or on an invalid config.
TrainedModel train(const TrainConfig& config, const TrainingData& data);

// "step,phase,L_cls,L_adv" with an empty L_adv where it does not apply.
std::string loss_curve_csv(const std::vector<LossRecord>& curve);

}  // namespace rsa::learn

#endif  // RSA_LEARN_TRAIN_H_
