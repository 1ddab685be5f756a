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


#include "rsa/harness/data.h"

#include <algorithm>
#include <set>

#include "rsa/common/error.h"
#include "rsa/render/clip.h"
#include "rsa/render/image.h"

namespace rsa::harness {

std::vector<std::string> manifest_classes(const genmodel::DatasetManifest& manifest) {
  if (manifest.header.contains("classes")) {
    return manifest.header.at("classes").get<std::vector<std::string>>();
  }
  std::set<std::string> actions;
  for (const genmodel::VideoRecord& r : manifest.records) actions.insert(r.action);
  return {actions.begin(), actions.end()};
}

learn::FeatureVector record_features(const genmodel::DatasetManifest& manifest,
                                     const genmodel::VideoRecord& record,
                                     const learn::FeatureConfig& config) {
  std::vector<std::string> frames;
  for (const std::string& f : record.files) {
    if (f.rfind("frame_", 0) == 0) frames.push_back(f);
  }
  std::sort(frames.begin(), frames.end());
  std::vector<render::Image> selected;
  for (int i : learn::feature_frame_indices(static_cast<int>(frames.size()), config)) {
    selected.push_back(
        render::read_image(manifest.root / record.directory / frames[static_cast<std::size_t>(i)],
                           true));
  }
  return learn::features_from_frames(selected, config);
}

learn::FeatureVector render_features(const genmodel::VideoRecord& record,
                                     const genmodel::ClipSettings& clip,
                                     const genmodel::MotionLibrary& library,
                                     const learn::FeatureConfig& config,
                                     render::TextureCache* cache) {
  const render::SceneDescription scene = genmodel::build_scene(record, clip, library);
  std::vector<render::Image> selected;
  render::render_frames(
      scene, learn::feature_frame_indices(scene.frame_count, config),
      [&](int, render::RenderedFrame&& f) { selected.push_back(f.frame.image()); }, cache);
  return learn::features_from_frames(selected, config);
}

learn::DomainDataset load_dataset(const genmodel::DatasetManifest& manifest,
                                  const std::vector<std::string>& ids,
                                  const std::vector<std::string>& classes,
                                  const learn::FeatureConfig& config) {
  learn::DomainDataset ds;
  ds.classes = classes;
  ds.domain = manifest.header.value("domain", "unknown");
  const auto add = [&](const genmodel::VideoRecord& r) {
    const auto it = std::find(classes.begin(), classes.end(), r.action);
    if (it == classes.end()) {
      throw InvalidArgument("video '" + r.video_id + "' has action '" + r.action +
                            "' outside the class list");
    }
    ds.features.push_back(record_features(manifest, r, config));
    ds.labels.push_back(static_cast<int>(it - classes.begin()));
  };
  if (ids.empty()) {
    for (const genmodel::VideoRecord& r : manifest.records) add(r);
  } else {
    for (const std::string& id : ids) add(manifest.find(id));
  }
  return ds;
}

}  // namespace rsa::harness
