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


#include "rsa/genmodel/toy_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsa/common/error.h"

namespace rsa::genmodel {
namespace {

constexpr double kTableTolerance = 1e-12;

void check_table(const std::vector<double>& p, const std::string& name) {
  if (p.empty()) throw InvalidArgument(name + " is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(name + " has a bad entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTableTolerance) {
    throw InvalidArgument(name + " sums to " + std::to_string(sum));
  }
}

std::vector<double> random_table(std::size_t n, randomize::Pcg32& rng) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) sum += (v = rng.uniform(0.2, 1.0));
  for (double& v : p) v /= sum;
  return p;
}

std::size_t draw(const std::vector<double>& p, randomize::Pcg32& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  return p.size() - 1;
}

// Calls fn(a, probability of the tuple, symbol) for every tuple in index order.
template <typename Fn>
void for_each_tuple(const ToyGenerativeModel& model, Fn fn) {
  const std::size_t k = model.p_nuisance.size();
  std::vector<std::size_t> n(k, 0);
  std::size_t index = 0;
  for (std::size_t a = 0; a < model.p_action.size(); ++a) {
    for (std::size_t m = 0; m < model.motion_count(); ++m) {
      std::fill(n.begin(), n.end(), 0);
      while (true) {
        double p = model.p_action[a] * model.p_motion[a][m];
        for (std::size_t i = 0; i < k; ++i) p *= model.p_nuisance[i][n[i]];
        fn(a, p, model.observation[index++]);
        std::size_t i = k;
        while (i > 0 && ++n[i - 1] == model.p_nuisance[i - 1].size()) n[--i] = 0;
        if (i == 0) break;
      }
    }
  }
}

}  // namespace

std::size_t ToyGenerativeModel::tuple_count() const {
  std::size_t n = p_action.size() * motion_count();
  for (const auto& t : p_nuisance) n *= t.size();
  return n;
}

std::size_t ToyGenerativeModel::tuple_index(std::size_t a, std::size_t m,
                                            const std::vector<std::size_t>& n) const {
  std::size_t index = a * motion_count() + m;
  for (std::size_t i = 0; i < p_nuisance.size(); ++i) {
    index = index * p_nuisance[i].size() + n[i];
  }
  return index;
}

void ToyGenerativeModel::validate() const {
  check_table(p_action, "P(A)");
  if (p_motion.size() != p_action.size()) {
    throw InvalidArgument("P(M|A) needs one row per action");
  }
  for (std::size_t a = 0; a < p_motion.size(); ++a) {
    if (p_motion[a].size() != p_motion[0].size()) {
      throw InvalidArgument("P(M|A) rows differ in length");
    }
    check_table(p_motion[a], "P(M|A=" + std::to_string(a) + ")");
  }
  for (std::size_t i = 0; i < p_nuisance.size(); ++i) {
    check_table(p_nuisance[i], "P(N_" + std::to_string(i) + ")");
  }
  if (observation_count < 1) throw InvalidArgument("observation_count must be >= 1");
  if (observation.size() != tuple_count()) {
    throw InvalidArgument("g must cover all " + std::to_string(tuple_count()) + " tuples");
  }
  for (int x : observation) {
    if (x < 0 || x >= observation_count) throw InvalidArgument("g maps outside its range");
  }
}

std::vector<double> exact_posterior(const ToyGenerativeModel& model, int observation) {
  model.validate();
  if (observation < 0 || observation >= model.observation_count) {
    throw InvalidArgument("observation " + std::to_string(observation) + " is out of range");
  }
  std::vector<double> joint(model.p_action.size(), 0.0);
  for_each_tuple(model, [&](std::size_t a, double p, int x) {
    if (x == observation) joint[a] += p;
  });
  double total = 0.0;
  for (double v : joint) total += v;
  if (!(total > 0.0)) {
    throw InvalidArgument("observation " + std::to_string(observation) +
                          " has zero probability under the model");
  }
  for (double& v : joint) v /= total;
  return joint;
}

std::vector<double> observation_marginal(const ToyGenerativeModel& model) {
  model.validate();
  std::vector<double> px(static_cast<std::size_t>(model.observation_count), 0.0);
  for_each_tuple(model, [&](std::size_t, double p, int x) { px[static_cast<std::size_t>(x)] += p; });
  return px;
}

ToyGenerativeModel random_toy_model(const ToyShape& shape, randomize::Pcg32& rng) {
  if (shape.actions < 1 || shape.motions < 1 || shape.observations < 1) {
    throw InvalidArgument("toy model sizes must be >= 1");
  }
  ToyGenerativeModel model;
  model.p_action = random_table(static_cast<std::size_t>(shape.actions), rng);
  for (int a = 0; a < shape.actions; ++a) {
    model.p_motion.push_back(random_table(static_cast<std::size_t>(shape.motions), rng));
  }
  for (int v : shape.nuisance_values) {
    if (v < 1) throw InvalidArgument("nuisance factors need >= 1 value");
    model.p_nuisance.push_back(random_table(static_cast<std::size_t>(v), rng));
  }
  model.observation_count = shape.observations;
  const std::size_t tuples = model.tuple_count();
  if (tuples < static_cast<std::size_t>(shape.observations)) {
    throw InvalidArgument("more observation symbols than tuples");
  }
  while (true) {
    model.observation.assign(tuples, 0);
    std::vector<bool> used(static_cast<std::size_t>(shape.observations), false);
    for (int& x : model.observation) {
      x = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(shape.observations)));
      used[static_cast<std::size_t>(x)] = true;
    }
    if (std::find(used.begin(), used.end(), false) == used.end()) break;
  }
  model.validate();
  return model;
}

std::vector<ToyDraw> sample_toy(const ToyGenerativeModel& model, std::size_t count,
                                randomize::Pcg32& rng) {
  model.validate();
  std::vector<ToyDraw> out;
  out.reserve(count);
  std::vector<std::size_t> n(model.p_nuisance.size());
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t a = draw(model.p_action, rng);
    const std::size_t m = draw(model.p_motion[a], rng);
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = draw(model.p_nuisance[i], rng);
    out.push_back({static_cast<int>(a), model.observation[model.tuple_index(a, m, n)]});
  }
  return out;
}

}  // namespace rsa::genmodel
