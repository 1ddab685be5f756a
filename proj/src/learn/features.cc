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


#include "rsa/learn/features.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rsa/common/error.h"
#include "rsa/kernels/pixel.h"

namespace rsa::learn {

void FeatureConfig::validate() const {
  if (frames < 1 || rows < 1 || cols < 1) {
    throw InvalidArgument("feature frames, rows and cols must be >= 1");
  }
}

std::vector<int> feature_frame_indices(int clip_frames, const FeatureConfig& config) {
  config.validate();
  if (clip_frames < config.frames) {
    throw InvalidArgument("clip has " + std::to_string(clip_frames) + " frames, features need " +
                          std::to_string(config.frames));
  }
  std::vector<int> out;
  for (int k = 0; k < config.frames; ++k) {
    out.push_back(static_cast<int>(static_cast<long long>(k) * clip_frames / config.frames));
  }
  return out;
}

FeatureVector features_from_frames(std::span<const render::Image> selected,
                                   const FeatureConfig& config) {
  config.validate();
  if (selected.size() != static_cast<std::size_t>(config.frames)) {
    throw InvalidArgument("expected " + std::to_string(config.frames) + " frames, got " +
                          std::to_string(selected.size()));
  }
  const int width = selected[0].width;
  const int height = selected[0].height;
  if (width < config.cols || height < config.rows) {
    throw InvalidArgument("frames are smaller than the feature grid");
  }
  const auto bounds = [](int extent, int blocks) {
    std::vector<int> b(static_cast<std::size_t>(blocks) + 1);
    for (int k = 0; k <= blocks; ++k) {
      b[k] = static_cast<int>(static_cast<long long>(k) * extent / blocks);
    }
    return b;
  };
  const std::vector<int> xb = bounds(width, config.cols);
  const std::vector<int> yb = bounds(height, config.rows);

  const kernels::PixelKernels& pk = kernels::pixel_kernels();
  FeatureVector out;
  out.reserve(config.dimension());
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(config.cols));
  for (const render::Image& frame : selected) {
    if (frame.width != width || frame.height != height || frame.channels != 3) {
      throw InvalidArgument("feature frames must be RGB images of one size");
    }
    for (int r = 0; r < config.rows; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int y = yb[r]; y < yb[r + 1]; ++y) {
        pk.luma_block_sums(frame.row(y), xb.data(), config.cols, acc.data());
      }
      for (int c = 0; c < config.cols; ++c) {
        const double area = static_cast<double>(yb[r + 1] - yb[r]) * (xb[c + 1] - xb[c]);
        out.push_back(static_cast<double>(acc[c]) / area);
      }
    }
  }

  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(out.size());
  double var = 0.0;
  for (double v : out) var += (v - mean) * (v - mean);
  var /= static_cast<double>(out.size());
  if (var == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return out;
  }
  const double inv = 1.0 / std::sqrt(var);
  for (double& v : out) v = (v - mean) * inv;
  return out;
}

FeatureVector extract_features(std::span<const render::Image> clip, const FeatureConfig& config) {
  std::vector<render::Image> selected;
  for (int i : feature_frame_indices(static_cast<int>(clip.size()), config)) {
    selected.push_back(clip[static_cast<std::size_t>(i)]);
  }
  return features_from_frames(selected, config);
}

}  // namespace rsa::learn
