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


#include "rsa/learn/network.h"

#include <algorithm>
#include <cmath>

#include "rsa/common/error.h"
#include "rsa/kernels/dense.h"

namespace rsa::learn {

Mlp::Mlp(std::vector<std::size_t> widths, bool activate_output)
    : widths_(std::move(widths)), activate_output_(activate_output) {
  if (widths_.size() < 2) throw InvalidArgument("a network needs at least one layer");
  std::size_t offset = 0;
  for (std::size_t k = 0; k + 1 < widths_.size(); ++k) {
    if (widths_[k] == 0 || widths_[k + 1] == 0) throw InvalidArgument("layer widths must be > 0");
    offsets_.push_back(offset);
    offset += widths_[k] * widths_[k + 1] + widths_[k + 1];
  }
  params.assign(offset, 0.0);
}

void Mlp::initialize(randomize::Pcg32& rng) {
  std::fill(params.begin(), params.end(), 0.0);
  for (std::size_t k = 0; k < layer_count(); ++k) {
    const double limit = std::sqrt(6.0 / static_cast<double>(widths_[k] + widths_[k + 1]));
    double* w = params.data() + weight_offset(k);
    for (std::size_t i = 0; i < widths_[k] * widths_[k + 1]; ++i) w[i] = rng.uniform(-limit, limit);
  }
}

void Mlp::forward(std::span<const double> input, Trace& trace) const {
  if (input.size() != input_size()) {
    throw InvalidArgument("network expects " + std::to_string(input_size()) + " inputs, got " +
                          std::to_string(input.size()));
  }
  const kernels::DenseKernels& dk = kernels::dense_kernels();
  trace.values.resize(widths_.size());
  trace.values[0].assign(input.begin(), input.end());
  for (std::size_t k = 0; k < layer_count(); ++k) {
    std::vector<double>& y = trace.values[k + 1];
    y.resize(widths_[k + 1]);
    dk.gemv(params.data() + weight_offset(k), widths_[k + 1], widths_[k],
            trace.values[k].data(), params.data() + bias_offset(k), y.data());
    if (k + 1 < layer_count() || activate_output_) {
      for (double& v : y) v = std::tanh(v);
    }
  }
}

void Mlp::backward(const Trace& trace, std::span<const double> d_output, std::span<double> grad,
                   std::vector<double>* d_input) const {
  const kernels::DenseKernels& dk = kernels::dense_kernels();
  std::vector<double> delta(d_output.begin(), d_output.end());
  std::vector<double> prev;
  for (std::size_t k = layer_count(); k-- > 0;) {
    const std::vector<double>& y = trace.values[k + 1];
    if (k + 1 < layer_count() || activate_output_) {
      for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= 1.0 - y[i] * y[i];
    }
    const std::size_t in = widths_[k];
    const std::size_t out = widths_[k + 1];
    dk.ger(1.0, delta.data(), out, trace.values[k].data(), in, grad.data() + weight_offset(k));
    dk.axpy(1.0, delta.data(), grad.data() + bias_offset(k), out);
    if (k == 0 && d_input == nullptr) break;
    prev.assign(in, 0.0);
    dk.gemv_t_acc(params.data() + weight_offset(k), out, in, delta.data(), prev.data());
    delta.swap(prev);
  }
  if (d_input != nullptr) *d_input = std::move(delta);
}

}  // namespace rsa::learn
