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


#include "rsa/learn/train.h"

#include <cstdio>

#include "rsa/common/error.h"
#include "rsa/kernels/dense.h"

namespace rsa::learn {
namespace {

void descend(Mlp& net, const std::vector<double>& grad, double rate) {
  kernels::dense_kernels().axpy(-rate, grad.data(), net.params.data(), grad.size());
}

// Walks a shuffled order of one dataset, reshuffling when exhausted.
class Cursor {
 public:
  explicit Cursor(const DomainDataset* data) : data_(data) {}

  Batch take(std::size_t n, randomize::Pcg32& rng) {
    Batch b{data_, {}};
    while (b.indices.size() < n) {
      if (pos_ == order_.size()) reshuffle(rng);
      b.indices.push_back(order_[pos_++]);
    }
    return b;
  }

  void reshuffle(randomize::Pcg32& rng) {
    order_.resize(data_->size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    for (std::size_t i = order_.size(); i > 1; --i) {
      std::swap(order_[i - 1], order_[rng.bounded(static_cast<std::uint32_t>(i))]);
    }
    pos_ = 0;
  }

 private:
  const DomainDataset* data_;
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
};

void train_single_domain(ClassifierModel& model, const DomainDataset& data, int epochs,
                         double rate, int batch_size, const char* phase,
                         randomize::Pcg32& rng, std::vector<LossRecord>& curve) {
  Cursor cursor(&data);
  const auto batch = static_cast<std::size_t>(batch_size);
  int step = curve.empty() ? 0 : curve.back().step + 1;
  for (int e = 0; e < epochs; ++e) {
    cursor.reshuffle(rng);
    for (std::size_t start = 0; start < data.size(); start += batch) {
      const Batch b = cursor.take(std::min(batch, data.size() - start), rng);
      const double loss = classification_step(model, std::span<const Batch>(&b, 1), rate);
      curve.push_back({step++, phase, loss, std::nullopt});
    }
  }
}

void train_two_domains(ClassifierModel& model, DiscriminatorModel* d, const TrainConfig& config,
                       const DomainDataset& source, const DomainDataset& target,
                       randomize::Pcg32& rng, std::vector<LossRecord>& curve) {
  Cursor src(&source);
  Cursor tgt(&target);
  const auto batch = static_cast<std::size_t>(config.batch_size);
  const std::size_t half = batch / 2;
  const std::size_t steps = (source.size() + target.size() + batch - 1) / batch;
  int step = curve.empty() ? 0 : curve.back().step + 1;
  for (int e = 0; e < config.epochs; ++e) {
    for (std::size_t s = 0; s < steps; ++s, ++step) {
      const Batch batches[2] = {src.take(half, rng), tgt.take(batch - half, rng)};
      if (d == nullptr) {
        const double loss = classification_step(model, batches, config.learning_rate);
        curve.push_back({step, "train", loss, std::nullopt});
      } else {
        const StepLog log = alternating_step(model, *d, batches[0], batches[1], config);
        curve.push_back({step, "discriminator", log.before.cls, log.before.adv});
        curve.push_back(
            {step, "model", log.after_discriminator.cls, log.after_discriminator.adv});
      }
    }
  }
}

const DomainDataset& require(const DomainDataset* d, const char* what, Strategy s) {
  if (d == nullptr) {
    throw InvalidArgument("strategy " + strategy_name(s) + " needs a " + what + " dataset");
  }
  d->validate();
  return *d;
}

}  // namespace

std::string strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kRealOnly:
      return "real-only";
    case Strategy::kSyntheticOnly:
      return "synthetic-only";
    case Strategy::kJoint:
      return "joint";
    case Strategy::kFinetune:
      return "finetune";
    case Strategy::kAdversarial:
      return "adversarial";
  }
  return "joint";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kRealOnly, Strategy::kSyntheticOnly, Strategy::kJoint,
                     Strategy::kFinetune, Strategy::kAdversarial}) {
    if (strategy_name(s) == name) return s;
  }
  throw InvalidArgument("unknown strategy '" + std::string(name) +
                        "' (expected real-only, synthetic-only, joint, finetune or adversarial)");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !(finetune_learning_rate > 0.0) ||
      !(discriminator_learning_rate > 0.0)) {
    throw InvalidArgument("learning rates must be > 0");
  }
  if (!(finetune_learning_rate < learning_rate)) {
    throw InvalidArgument("finetune learning rate must be below the pretraining rate");
  }
  if (!(lambda_adv >= 0.0)) throw InvalidArgument("lambda_adv must be >= 0");
  if (batch_size < 2) throw InvalidArgument("batch_size must be >= 2");
  if (epochs < 0 || finetune_epochs < 0) throw InvalidArgument("epochs must be >= 0");
  if (discriminator_steps < 1) throw InvalidArgument("discriminator_steps must be >= 1");
}

double classification_step(ClassifierModel& model, std::span<const Batch> batches,
                           double learning_rate) {
  ClassifierGradient grad;
  const Losses l = classifier_gradient(model, nullptr, batches, 0.0, grad);
  descend(model.trunk, grad.trunk, learning_rate);
  descend(model.head, grad.head, learning_rate);
  return l.cls;
}

StepLog alternating_step(ClassifierModel& model, DiscriminatorModel& discriminator,
                         const Batch& source, const Batch& target, const TrainConfig& config) {
  StepLog log;
  std::vector<double> d_grad;
  for (int k = 0; k < config.discriminator_steps; ++k) {
    const Losses l = discriminator_gradient(model, discriminator, source, target, d_grad);
    if (k == 0) log.before = l;
    // Ascent on L_adv.
    descend(discriminator.net, d_grad, -config.discriminator_learning_rate);
  }
  const Batch batches[2] = {source, target};
  ClassifierGradient grad;
  log.after_discriminator =
      classifier_gradient(model, &discriminator, batches, config.lambda_adv, grad);
  descend(model.trunk, grad.trunk, config.learning_rate);
  descend(model.head, grad.head, config.learning_rate);
  return log;
}

TrainedModel train(const TrainConfig& config, const TrainingData& data) {
  config.validate();
  const Strategy s = config.strategy;
  const bool needs_real = s != Strategy::kSyntheticOnly;
  const bool needs_synthetic = s != Strategy::kRealOnly;
  const DomainDataset* real = needs_real ? &require(data.real, "real", s) : nullptr;
  const DomainDataset* synthetic =
      needs_synthetic ? &require(data.synthetic, "synthetic", s) : nullptr;
  const DomainDataset& first = synthetic ? *synthetic : *real;
  if (real && synthetic) {
    if (real->classes != synthetic->classes) {
      throw InvalidArgument("real and synthetic datasets use different class lists");
    }
    if (real->features[0].size() != synthetic->features[0].size()) {
      throw InvalidArgument("real and synthetic features differ in dimension");
    }
  }

  const std::uint64_t key = randomize::mix64(config.seed);
  randomize::Pcg32 f_init(key, 0);
  randomize::Pcg32 d_init(key, 1);
  randomize::Pcg32 schedule(key, 2);

  TrainedModel out;
  out.classifier = make_classifier(first.features[0].size(), first.classes, config.shape, f_init);
  switch (s) {
    case Strategy::kRealOnly:
      train_single_domain(out.classifier, *real, config.epochs, config.learning_rate,
                          config.batch_size, "train", schedule, out.curve);
      break;
    case Strategy::kSyntheticOnly:
      train_single_domain(out.classifier, *synthetic, config.epochs, config.learning_rate,
                          config.batch_size, "train", schedule, out.curve);
      break;
    case Strategy::kFinetune:
      train_single_domain(out.classifier, *synthetic, config.epochs, config.learning_rate,
                          config.batch_size, "pretrain", schedule, out.curve);
      train_single_domain(out.classifier, *real, config.finetune_epochs,
                          config.finetune_learning_rate, config.batch_size, "finetune",
                          schedule, out.curve);
      break;
    case Strategy::kJoint:
      train_two_domains(out.classifier, nullptr, config, *synthetic, *real, schedule, out.curve);
      break;
    case Strategy::kAdversarial:
      out.discriminator =
          make_discriminator(out.classifier.latent_size(), config.shape, d_init);
      train_two_domains(out.classifier, &*out.discriminator, config, *synthetic, *real, schedule,
                        out.curve);
      break;
  }
  return out;
}

std::string loss_curve_csv(const std::vector<LossRecord>& curve) {
  std::string out = "step,phase,L_cls,L_adv\n";
  char buf[96];
  for (const LossRecord& r : curve) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.17g,", r.step, r.phase.c_str(), r.cls);
    out += buf;
    if (r.adv) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.adv);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace rsa::learn
