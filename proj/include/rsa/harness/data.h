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


#ifndef RSA_HARNESS_DATA_H_
#define RSA_HARNESS_DATA_H_

#include <string>
#include <vector>

#include "rsa/genmodel/dataset.h"
#include "rsa/learn/features.h"
#include "rsa/learn/model.h"
#include "rsa/render/texture.h"

namespace rsa::harness {

// The header's class list when present, else the sorted distinct actions.
std::vector<std::string> manifest_classes(const genmodel::DatasetManifest& manifest);

// Features from the frame files written for `record`.
learn::FeatureVector record_features(const genmodel::DatasetManifest& manifest,
                                     const genmodel::VideoRecord& record,
                                     const learn::FeatureConfig& config);

// Features from rendering only the sampled frames in memory; equal to
// record_features on the written clip when frames are stored losslessly.
learn::FeatureVector render_features(const genmodel::VideoRecord& record,
                                     const genmodel::ClipSettings& clip,
                                     const genmodel::MotionLibrary& library,
                                     const learn::FeatureConfig& config,
                                     render::TextureCache* cache = nullptr);

// Dataset over `ids` (every record when empty) labelled by position in
// `classes`. Throws InvalidArgument for an unknown id or action.
learn::DomainDataset load_dataset(const genmodel::DatasetManifest& manifest,
                                  const std::vector<std::string>& ids,
                                  const std::vector<std::string>& classes,
                                  const learn::FeatureConfig& config);

}  // namespace rsa::harness

#endif  // RSA_HARNESS_DATA_H_
