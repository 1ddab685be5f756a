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


#ifndef RSA_LEARN_NETWORK_H_
#define RSA_LEARN_NETWORK_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rsa/randomize/rng.h"

namespace rsa::learn {

// Stack of fully connected layers. Hidden layers apply tanh; the last layer
// applies it only when `activate_output`. All parameters live in one flat
// vector: for each layer, its row-major (out x in) weights then its biases.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::vector<std::size_t> widths, bool activate_output);

  const std::vector<std::size_t>& widths() const { return widths_; }
  bool activate_output() const { return activate_output_; }
  std::size_t layer_count() const { return widths_.empty() ? 0 : widths_.size() - 1; }
  std::size_t input_size() const { return widths_.front(); }
  std::size_t output_size() const { return widths_.back(); }
  std::size_t parameter_count() const { return params.size(); }
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + widths_[layer] * widths_[layer + 1];
  }

  // Glorot-uniform weights, zero biases.
  void initialize(randomize::Pcg32& rng);

  // Layer inputs and outputs of one forward pass; values[0] is the input and
  // values.back() the network output.
  struct Trace {
    std::vector<std::vector<double>> values;
  };
  void forward(std::span<const double> input, Trace& trace) const;

  // Adds d(loss)/d(params) to `grad` given d(loss)/d(output). Writes
  // d(loss)/d(input) into `d_input` when non-null.
  void backward(const Trace& trace, std::span<const double> d_output, std::span<double> grad,
                std::vector<double>* d_input) const;

  std::vector<double> params;

 private:
  std::vector<std::size_t> widths_;
  std::vector<std::size_t> offsets_;
  bool activate_output_ = false;
};

}  // namespace rsa::learn

#endif  // RSA_LEARN_NETWORK_H_
