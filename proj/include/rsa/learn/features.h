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


#ifndef RSA_LEARN_FEATURES_H_
#define RSA_LEARN_FEATURES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rsa/render/image.h"

namespace rsa::learn {

// Spatiotemporal luma cube: `frames` frames, each area-averaged onto a
// rows x cols grid.
struct FeatureConfig {
  int frames = 8;
  int rows = 12;
  int cols = 16;

  std::size_t dimension() const {
    return static_cast<std::size_t>(frames) * static_cast<std::size_t>(rows) *
           static_cast<std::size_t>(cols);
  }
  void validate() const;
};

using FeatureVector = std::vector<double>;

// Clip frames feeding the cube: floor(k * clip_frames / frames) for
// k = 0 .. frames - 1. Throws InvalidArgument when clip_frames < frames.
std::vector<int> feature_frame_indices(int clip_frames, const FeatureConfig& config);

// Features of already selected frames (exactly config.frames RGB images of
// one size, at least cols x rows). Block k spans pixels
// [floor(k W / cols), floor((k + 1) W / cols)) horizontally and likewise
// vertically; its value is the mean fixed-point luma. The cube is then
// standardized to mean 0 and variance 1, or set to zero when constant.
FeatureVector features_from_frames(std::span<const render::Image> selected,
                                   const FeatureConfig& config);

// Subsamples a whole clip with feature_frame_indices first.
FeatureVector extract_features(std::span<const render::Image> clip, const FeatureConfig& config);

}  // namespace rsa::learn

#endif  // RSA_LEARN_FEATURES_H_
