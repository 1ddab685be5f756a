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


#ifndef RSA_LEARN_MODEL_H_
#define RSA_LEARN_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rsa/learn/features.h"
#include "rsa/learn/network.h"
#include "rsa/randomize/rng.h"

namespace rsa::learn {

// Action classifier f: trunk f_T (two tanh layers, input -> hidden ->
// latent) and a linear head with softmax over `classes`.
struct ClassifierModel {
  Mlp trunk;
  Mlp head;
  std::vector<std::string> classes;

  std::size_t input_size() const { return trunk.input_size(); }
  std::size_t latent_size() const { return trunk.output_size(); }
  std::size_t class_count() const { return head.output_size(); }
};

// Domain discriminator D on the latent: two tanh layers then a logistic
// output, the probability that a latent came from the target domain.
struct DiscriminatorModel {
  Mlp net;
};

struct ModelShape {
  std::size_t hidden = 64;
  std::size_t latent = 32;
  std::size_t discriminator_hidden1 = 32;
  std::size_t discriminator_hidden2 = 16;
};

ClassifierModel make_classifier(std::size_t input_size, std::vector<std::string> classes,
                                const ModelShape& shape, randomize::Pcg32& rng);
DiscriminatorModel make_discriminator(std::size_t latent_size, const ModelShape& shape,
                                      randomize::Pcg32& rng);

struct ClassifierOutput {
  std::vector<double> latent;
  std::vector<double> probabilities;
};

// Throws InvalidArgument on an input of the wrong dimension.
ClassifierOutput classifier_forward(const ClassifierModel& model, std::span<const double> x);

// Logistic output clamped to [kProbabilityFloor, 1 - kProbabilityFloor].
double discriminator_forward(const DiscriminatorModel& d, std::span<const double> latent);
inline constexpr double kProbabilityFloor = 1e-7;

// Labeled examples of one domain, classes indexed into `classes`.
struct DomainDataset {
  std::string domain;
  std::vector<std::string> classes;
  std::vector<FeatureVector> features;
  std::vector<int> labels;

  std::size_t size() const { return features.size(); }
  // Nonempty, one dimension, labels in range. Throws InvalidArgument.
  void validate() const;
};

// A batch refers to examples of a dataset by index.
struct Batch {
  const DomainDataset* data = nullptr;
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
};

struct Losses {
  double cls = 0.0;  // mean cross-entropy over every example of both batches
  double adv = 0.0;  // mean_t log D(f_T(x_t)) + mean_s log(1 - D(f_T(x_s)))
};

// Both batches must be nonempty.
Losses adversarial_losses(const ClassifierModel& model, const DiscriminatorModel& d,
                          const Batch& source, const Batch& target);

// Mean cross-entropy over the concatenation of `batches`.
double classification_loss(const ClassifierModel& model, std::span<const Batch> batches);

struct ClassifierGradient {
  std::vector<double> trunk;
  std::vector<double> head;
};

// Gradient of L_cls + lambda * L_adv with respect to the classifier. The
// classification term covers the concatenation of `batches`; the
// adversarial term is added when `d` is non-null, with batches[0] as source
// and batches[1] as target. Per example the latent gradient is
// dL_cls/dz + lambda * dL_adv/dz, so lambda = 0 reproduces the plain
// classification gradient exactly. Returns the losses at the current
// parameters (adv is 0 without a discriminator).
Losses classifier_gradient(const ClassifierModel& model, const DiscriminatorModel* d,
                           std::span<const Batch> batches, double lambda,
                           ClassifierGradient& grad);

// Gradient of L_adv with respect to the discriminator; returns the losses.
Losses discriminator_gradient(const ClassifierModel& model, const DiscriminatorModel& d,
                              const Batch& source, const Batch& target,
                              std::vector<double>& grad);

}  // namespace rsa::learn

#endif  // RSA_LEARN_MODEL_H_
