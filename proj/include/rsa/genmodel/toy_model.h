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


#ifndef RSA_GENMODEL_TOY_MODEL_H_
#define RSA_GENMODEL_TOY_MODEL_H_

#include <cstddef>
#include <vector>

#include "rsa/randomize/rng.h"

namespace rsa::genmodel {

// A fully discrete generative model: action A, motion M given A, independent
// nuisances N_i, and a deterministic observation x = g(A, M, N_0, ...).
struct ToyGenerativeModel {
  std::vector<double> p_action;                 // P(A = a)
  std::vector<std::vector<double>> p_motion;    // P(M = m | A = a), [a][m]
  std::vector<std::vector<double>> p_nuisance;  // P(N_i = v), [i][v]
  int observation_count = 0;
  // g over the product space, indexed by tuple_index.
  std::vector<int> observation;

  std::size_t motion_count() const { return p_motion.empty() ? 0 : p_motion[0].size(); }
  std::size_t tuple_count() const;
  // Row-major over (a, m, n_0, n_1, ...), the last nuisance varying fastest.
  std::size_t tuple_index(std::size_t a, std::size_t m, const std::vector<std::size_t>& n) const;

  // Tables normalized to 1 +- 1e-12 with nonnegative entries, g total and
  // in range. Throws InvalidArgument otherwise.
  void validate() const;
};

// P(A | x) by enumerating every tuple. Throws InvalidArgument when x is out
// of range or has zero probability under the model.
std::vector<double> exact_posterior(const ToyGenerativeModel& model, int observation);

// P(x) for every observation symbol.
std::vector<double> observation_marginal(const ToyGenerativeModel& model);

struct ToyShape {
  int actions = 3;
  int motions = 3;
  std::vector<int> nuisance_values{4};
  int observations = 6;
};

// Table entries uniform in [0.2, 1] then normalized; g uniform over symbols,
// redrawn until every symbol is produced by some tuple.
ToyGenerativeModel random_toy_model(const ToyShape& shape, randomize::Pcg32& rng);

struct ToyDraw {
  int action = 0;
  int observation = 0;
};

// Ancestral sampling: A, then M | A, then each N_i, then x = g(...).
std::vector<ToyDraw> sample_toy(const ToyGenerativeModel& model, std::size_t count,
                                randomize::Pcg32& rng);

}  // namespace rsa::genmodel

#endif  // RSA_GENMODEL_TOY_MODEL_H_
