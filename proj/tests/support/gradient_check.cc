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


#include "support/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace rsa::testing {
namespace {

double objective(const learn::ClassifierModel& m, const learn::DiscriminatorModel& d,
                 const learn::Batch& s, const learn::Batch& t, double lambda) {
  const learn::Losses l = learn::adversarial_losses(m, d, s, t);
  return l.cls + lambda * l.adv;
}

}  // namespace

GradientCheck check_objective_gradient(learn::ClassifierModel model,
                                       learn::DiscriminatorModel d,
                                       const learn::Batch& source, const learn::Batch& target,
                                       double lambda, double h) {
  learn::ClassifierGradient fg;
  const learn::Batch batches[2] = {source, target};
  learn::classifier_gradient(model, &d, batches, lambda, fg);
  std::vector<double> dg;
  learn::discriminator_gradient(model, d, source, target, dg);
  for (double& v : dg) v *= lambda;  // dJ/dD = lambda dL_adv/dD

  GradientCheck out;
  const auto sweep = [&](std::vector<double>& params, const std::vector<double>& analytic) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double saved = params[i];
      params[i] = saved + h;
      const double up = objective(model, d, source, target, lambda);
      params[i] = saved - h;
      const double down = objective(model, d, source, target, lambda);
      params[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[i];
      const double err =
          std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-6});
      out.max_relative_error = std::max(out.max_relative_error, err);
      ++out.parameters;
    }
  };
  sweep(model.trunk.params, fg.trunk);
  sweep(model.head.params, fg.head);
  sweep(d.net.params, dg);
  return out;
}

GradientFixture make_gradient_fixture(std::uint64_t seed, std::size_t dim, std::size_t classes,
                                      std::size_t source_size, std::size_t target_size) {
  randomize::Pcg32 rng(seed, 99);
  GradientFixture f;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
  const auto fill = [&](learn::DomainDataset& ds, const char* domain, std::size_t n,
                        double shift) {
    ds.domain = domain;
    ds.classes = names;
    for (std::size_t i = 0; i < n; ++i) {
      learn::FeatureVector x(dim);
      for (double& v : x) v = rng.uniform(-1.5, 1.5) + shift;
      ds.features.push_back(std::move(x));
      ds.labels.push_back(static_cast<int>(rng.bounded(static_cast<std::uint32_t>(classes))));
    }
  };
  fill(f.source, "synthetic", source_size, 0.3);
  fill(f.target, "real", target_size, -0.3);
  learn::ModelShape shape;
  shape.hidden = 6;
  shape.latent = 4;
  shape.discriminator_hidden1 = 5;
  shape.discriminator_hidden2 = 3;
  f.model = learn::make_classifier(dim, names, shape, rng);
  f.discriminator = learn::make_discriminator(shape.latent, shape, rng);
  // Nonzero biases so every parameter group is exercised away from zero.
  for (learn::Mlp* net : {&f.model.trunk, &f.model.head, &f.discriminator.net}) {
    for (std::size_t k = 0; k < net->layer_count(); ++k) {
      for (std::size_t i = 0; i < net->widths()[k + 1]; ++i) {
        net->params[net->bias_offset(k) + i] = rng.uniform(-0.3, 0.3);
      }
    }
  }
  return f;
}

}  // namespace rsa::testing
