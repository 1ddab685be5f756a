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


#ifndef RSA_TESTS_SUPPORT_GRADIENT_CHECK_H_
#define RSA_TESTS_SUPPORT_GRADIENT_CHECK_H_

#include <cstdint>

#include "rsa/learn/model.h"

namespace rsa::testing {

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t parameters = 0;
};

// Compares the analytic gradient of J = L_cls + lambda * L_adv over every
// parameter of the classifier and the discriminator against central
// differences of J with step `h`. Relative error per parameter is
// |a - n| / max(|a|, |n|, 1e-6).
GradientCheck check_objective_gradient(learn::ClassifierModel model,
                                       learn::DiscriminatorModel d,
                                       const learn::Batch& source, const learn::Batch& target,
                                       double lambda, double h = 1e-5);

// Small random problem for gradient checks: datasets of the given sizes with
// `dim` Gaussian-ish features and `classes` labels.
struct GradientFixture {
  learn::DomainDataset source;
  learn::DomainDataset target;
  learn::ClassifierModel model;
  learn::DiscriminatorModel discriminator;
};
GradientFixture make_gradient_fixture(std::uint64_t seed, std::size_t dim, std::size_t classes,
                                      std::size_t source_size, std::size_t target_size);

}  // namespace rsa::testing

#endif  // RSA_TESTS_SUPPORT_GRADIENT_CHECK_H_
