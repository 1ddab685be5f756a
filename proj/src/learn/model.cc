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


#include "rsa/learn/model.h"

#include <algorithm>
#include <cmath>

#include "rsa/common/error.h"

namespace rsa::learn {
namespace {

double logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

struct SoftmaxResult {
  std::vector<double> probabilities;
  double log_normalizer;
};

SoftmaxResult softmax(const std::vector<double>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - m);
  SoftmaxResult r{std::vector<double>(logits.size()), m + std::log(sum)};
  for (std::size_t i = 0; i < logits.size(); ++i) {
    r.probabilities[i] = std::exp(logits[i] - r.log_normalizer);
  }
  return r;
}

double cross_entropy(const std::vector<double>& logits, int label) {
  return softmax(logits).log_normalizer - logits[static_cast<std::size_t>(label)];
}

// Clamped D and d(log term)/ds for one example of the given domain.
struct DiscriminatorTerm {
  double log_term;
  double slope;
};

DiscriminatorTerm discriminator_term(double s, bool target) {
  const double sigma = logistic(s);
  const bool clamped = sigma < kProbabilityFloor || sigma > 1.0 - kProbabilityFloor;
  const double d = std::clamp(sigma, kProbabilityFloor, 1.0 - kProbabilityFloor);
  if (target) return {std::log(d), clamped ? 0.0 : 1.0 - sigma};
  return {std::log(1.0 - d), clamped ? 0.0 : -sigma};
}

void check_batches(const Batch& source, const Batch& target) {
  if (source.size() == 0 || target.size() == 0) {
    throw InvalidArgument("adversarial losses need nonempty source and target batches");
  }
}

const FeatureVector& example(const Batch& b, std::size_t k) {
  return b.data->features[b.indices[k]];
}

}  // namespace

ClassifierModel make_classifier(std::size_t input_size, std::vector<std::string> classes,
                                const ModelShape& shape, randomize::Pcg32& rng) {
  if (classes.size() < 2) throw InvalidArgument("a classifier needs at least two classes");
  ClassifierModel m;
  m.trunk = Mlp({input_size, shape.hidden, shape.latent}, true);
  m.head = Mlp({shape.latent, classes.size()}, false);
  m.classes = std::move(classes);
  m.trunk.initialize(rng);
  m.head.initialize(rng);
  return m;
}

DiscriminatorModel make_discriminator(std::size_t latent_size, const ModelShape& shape,
                                      randomize::Pcg32& rng) {
  DiscriminatorModel d;
  d.net = Mlp({latent_size, shape.discriminator_hidden1, shape.discriminator_hidden2, 1}, false);
  d.net.initialize(rng);
  return d;
}

ClassifierOutput classifier_forward(const ClassifierModel& model, std::span<const double> x) {
  Mlp::Trace t;
  Mlp::Trace h;
  model.trunk.forward(x, t);
  model.head.forward(t.values.back(), h);
  return {t.values.back(), softmax(h.values.back()).probabilities};
}

double discriminator_forward(const DiscriminatorModel& d, std::span<const double> latent) {
  Mlp::Trace t;
  d.net.forward(latent, t);
  return std::clamp(logistic(t.values.back()[0]), kProbabilityFloor, 1.0 - kProbabilityFloor);
}

void DomainDataset::validate() const {
  if (features.empty()) throw InvalidArgument("dataset '" + domain + "' is empty");
  if (labels.size() != features.size()) {
    throw InvalidArgument("dataset '" + domain + "' has mismatched labels");
  }
  for (const FeatureVector& f : features) {
    if (f.size() != features[0].size()) {
      throw InvalidArgument("dataset '" + domain + "' mixes feature dimensions");
    }
  }
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= classes.size()) {
      throw InvalidArgument("dataset '" + domain + "' has a label outside its class list");
    }
  }
}

Losses adversarial_losses(const ClassifierModel& model, const DiscriminatorModel& d,
                          const Batch& source, const Batch& target) {
  check_batches(source, target);
  Losses l;
  Mlp::Trace t;
  Mlp::Trace h;
  double adv_s = 0.0;
  double adv_t = 0.0;
  for (int domain = 0; domain < 2; ++domain) {
    const Batch& b = domain == 0 ? source : target;
    for (std::size_t k = 0; k < b.size(); ++k) {
      model.trunk.forward(example(b, k), t);
      model.head.forward(t.values.back(), h);
      l.cls += cross_entropy(h.values.back(), b.data->labels[b.indices[k]]);
      const double p = discriminator_forward(d, t.values.back());
      if (domain == 0) {
        adv_s += std::log(1.0 - p);
      } else {
        adv_t += std::log(p);
      }
    }
  }
  l.cls /= static_cast<double>(source.size() + target.size());
  l.adv = adv_t / static_cast<double>(target.size()) + adv_s / static_cast<double>(source.size());
  return l;
}

double classification_loss(const ClassifierModel& model, std::span<const Batch> batches) {
  double sum = 0.0;
  std::size_t n = 0;
  Mlp::Trace t;
  Mlp::Trace h;
  for (const Batch& b : batches) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      model.trunk.forward(example(b, k), t);
      model.head.forward(t.values.back(), h);
      sum += cross_entropy(h.values.back(), b.data->labels[b.indices[k]]);
      ++n;
    }
  }
  if (n == 0) throw InvalidArgument("classification loss of an empty batch");
  return sum / static_cast<double>(n);
}

Losses classifier_gradient(const ClassifierModel& model, const DiscriminatorModel* d,
                           std::span<const Batch> batches, double lambda,
                           ClassifierGradient& grad) {
  std::size_t n = 0;
  for (const Batch& b : batches) n += b.size();
  if (n == 0) throw InvalidArgument("gradient of an empty batch");
  if (d != nullptr) {
    if (batches.size() != 2) throw InvalidArgument("adversarial gradient needs source and target");
    check_batches(batches[0], batches[1]);
  }
  grad.trunk.assign(model.trunk.parameter_count(), 0.0);
  grad.head.assign(model.head.parameter_count(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);

  Losses l;
  double adv_sum[2] = {0.0, 0.0};
  Mlp::Trace t;
  Mlp::Trace h;
  Mlp::Trace dt;
  std::vector<double> d_logits;
  std::vector<double> dz;
  std::vector<double> dz_adv;
  std::vector<double> d_scratch(d ? d->net.parameter_count() : 0);
  for (std::size_t bi = 0; bi < batches.size(); ++bi) {
    const Batch& b = batches[bi];
    for (std::size_t k = 0; k < b.size(); ++k) {
      model.trunk.forward(example(b, k), t);
      model.head.forward(t.values.back(), h);
      const SoftmaxResult s = softmax(h.values.back());
      const auto y = static_cast<std::size_t>(b.data->labels[b.indices[k]]);
      l.cls += s.log_normalizer - h.values.back()[y];
      d_logits = s.probabilities;
      d_logits[y] -= 1.0;
      for (double& v : d_logits) v *= inv_n;
      model.head.backward(h, d_logits, grad.head, &dz);
      if (d != nullptr) {
        d->net.forward(t.values.back(), dt);
        const DiscriminatorTerm term = discriminator_term(dt.values.back()[0], bi == 1);
        adv_sum[bi] += term.log_term;
        const double slope = term.slope / static_cast<double>(b.size());
        d->net.backward(dt, std::span<const double>(&slope, 1), d_scratch, &dz_adv);
        for (std::size_t i = 0; i < dz.size(); ++i) dz[i] += lambda * dz_adv[i];
      }
      model.trunk.backward(t, dz, grad.trunk, nullptr);
    }
  }
  l.cls *= inv_n;
  if (d != nullptr) {
    l.adv = adv_sum[1] / static_cast<double>(batches[1].size()) +
            adv_sum[0] / static_cast<double>(batches[0].size());
  }
  return l;
}

Losses discriminator_gradient(const ClassifierModel& model, const DiscriminatorModel& d,
                              const Batch& source, const Batch& target,
                              std::vector<double>& grad) {
  check_batches(source, target);
  grad.assign(d.net.parameter_count(), 0.0);
  Losses l;
  double adv_sum[2] = {0.0, 0.0};
  Mlp::Trace t;
  Mlp::Trace h;
  Mlp::Trace dt;
  for (int domain = 0; domain < 2; ++domain) {
    const Batch& b = domain == 0 ? source : target;
    for (std::size_t k = 0; k < b.size(); ++k) {
      model.trunk.forward(example(b, k), t);
      model.head.forward(t.values.back(), h);
      l.cls += cross_entropy(h.values.back(), b.data->labels[b.indices[k]]);
      d.net.forward(t.values.back(), dt);
      const DiscriminatorTerm term = discriminator_term(dt.values.back()[0], domain == 1);
      adv_sum[domain] += term.log_term;
      const double slope = term.slope / static_cast<double>(b.size());
      d.net.backward(dt, std::span<const double>(&slope, 1), grad, nullptr);
    }
  }
  l.cls /= static_cast<double>(source.size() + target.size());
  l.adv = adv_sum[1] / static_cast<double>(target.size()) +
          adv_sum[0] / static_cast<double>(source.size());
  return l;
}

}  // namespace rsa::learn
