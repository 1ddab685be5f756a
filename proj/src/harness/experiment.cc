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


#include "rsa/harness/experiment.h"

#include <algorithm>

#include "rsa/common/error.h"
#include "rsa/genmodel/actions.h"
#include "rsa/harness/data.h"
#include "rsa/harness/metrics.h"

namespace rsa::harness {
namespace {

using genmodel::VideoRecord;

struct Domain {
  std::vector<VideoRecord> records;
  std::vector<learn::FeatureVector> features;
};

genmodel::MotionLibrary library_for(const OrderingConfig& c, const genmodel::ActorRanges& actors,
                                    std::uint64_t seed) {
  genmodel::ProceduralLibraryOptions opt;
  opt.actors = actors;
  opt.actions = c.classes;
  opt.clips_per_action = c.library_clips;
  return genmodel::build_procedural_library(opt, seed);
}

genmodel::GenerationConfig generation(const OrderingConfig& c, std::uint64_t seed,
                                      genmodel::Domain domain, int per_class,
                                      std::uint64_t first_stream) {
  genmodel::GenerationConfig g;
  g.master_seed = seed;
  g.videos_per_class = per_class;
  g.classes = c.classes;
  g.domain = domain;
  g.first_stream = first_stream;
  g.clip.frame_count = c.frame_count;
  if (domain == genmodel::Domain::kPseudoReal) {
    g.nuisances = genmodel::pseudo_real_nuisance_config();
    g.clip.render = genmodel::pseudo_real_render_settings();
  }
  g.clip.render.camera.width = c.width;
  g.clip.render.camera.height = c.height;
  g.clip.render.camera.fov_deg = c.fov_deg;
  return g;
}

Domain render_domain(const genmodel::GenerationConfig& g, const genmodel::MotionLibrary& library,
                     const learn::FeatureConfig& features, render::TextureCache& cache) {
  g.validate(library);
  Domain d;
  d.records = genmodel::plan_videos(g, library);
  for (const VideoRecord& r : d.records) {
    d.features.push_back(render_features(r, g.clip, library, features, &cache));
  }
  return d;
}

learn::DomainDataset dataset_of(const std::vector<const Domain*>& parts,
                                const std::vector<std::string>& ids,
                                const std::vector<std::string>& classes, const char* domain) {
  learn::DomainDataset ds;
  ds.domain = domain;
  ds.classes = classes;
  for (const std::string& id : ids) {
    bool found = false;
    for (const Domain* p : parts) {
      for (std::size_t i = 0; i < p->records.size() && !found; ++i) {
        if (p->records[i].video_id != id) continue;
        const auto it = std::find(classes.begin(), classes.end(), p->records[i].action);
        ds.features.push_back(p->features[i]);
        ds.labels.push_back(static_cast<int>(it - classes.begin()));
        found = true;
      }
    }
    if (!found) throw InvalidArgument("experiment lost video '" + id + "'");
  }
  return ds;
}

learn::DomainDataset whole(const Domain& d, const std::vector<std::string>& classes,
                           const char* domain) {
  std::vector<std::string> ids;
  for (const VideoRecord& r : d.records) ids.push_back(r.video_id);
  return dataset_of({&d}, ids, classes, domain);
}

std::vector<double> accuracies(const learn::TrainConfig& base, learn::Strategy s,
                               std::uint64_t seed, const learn::DomainDataset* synthetic,
                               const learn::DomainDataset* real,
                               const std::vector<learn::DomainDataset>& tests, int single_epochs) {
  learn::TrainConfig tc = base;
  tc.strategy = s;
  tc.seed = seed;
  if ((s == learn::Strategy::kRealOnly || s == learn::Strategy::kSyntheticOnly) &&
      single_epochs > 0) {
    tc.epochs = single_epochs;
  }
  const learn::TrainedModel m = learn::train(tc, {synthetic, real});
  std::vector<double> out;
  for (const learn::DomainDataset& t : tests) out.push_back(evaluate(m.classifier, t).accuracy);
  return out;
}

nlohmann::json nuisance_json(const randomize::NuisanceConfig& n) {
  const auto range = [](const randomize::Range& r) { return nlohmann::json{r.min, r.max}; };
  return {{"camera_distance", range(n.camera_distance)},
          {"azimuth", range(n.azimuth)},
          {"elevation", range(n.elevation)},
          {"texture_pool", n.texture_pool},
          {"height", range(n.humanoid.height)},
          {"limb_radius", range(n.humanoid.limb_radius)}};
}

nlohmann::json actor_json(const genmodel::ActorRanges& a) {
  return {{"tempo", {a.tempo.min, a.tempo.max}},
          {"amplitude", {a.amplitude.min, a.amplitude.max}},
          {"facing", {a.facing.min, a.facing.max}},
          {"offset", {a.offset.min, a.offset.max}}};
}

}  // namespace

OrderingConfig default_ordering_config() {
  OrderingConfig c;
  c.classes = genmodel::procedural_actions();
  c.synthetic_nuisances.camera_distance = {3.0, 5.0};
  c.synthetic_nuisances.azimuth = {-180.0, 180.0};
  c.synthetic_nuisances.elevation = {0.0, 30.0};
  c.synthetic_nuisances.texture_pool = randomize::procedural_texture_pool(6);
  c.real_actors.tempo = {1.1, 1.5};
  c.real_actors.amplitude = {0.6, 0.85};
  c.train.learning_rate = 0.05;
  c.train.finetune_learning_rate = learn::default_finetune_rate(c.train.learning_rate);
  c.train.discriminator_learning_rate = 0.05;
  c.train.epochs = 30;
  c.train.finetune_epochs = 90;
  c.train.batch_size = 16;
  return c;
}

nlohmann::json to_json(const OrderingConfig& c) {
  nlohmann::json bands = nlohmann::json::array();
  for (const AzimuthBand& b : c.test_bands) bands.push_back({b.lo, b.hi});
  return {{"classes", c.classes},
          {"train_per_class", c.train_per_class},
          {"test_per_class", c.test_per_class},
          {"reduced_divisor", c.reduced_divisor},
          {"test_bands", bands},
          {"primary_band", c.primary_band},
          {"test_texture_first", c.test_texture_first},
          {"synthetic_ratio", c.synthetic_ratio},
          {"synthetic_nuisances", nuisance_json(c.synthetic_nuisances)},
          {"frame_count", c.frame_count},
          {"resolution", {c.width, c.height}},
          {"fov_deg", c.fov_deg},
          {"library_clips", c.library_clips},
          {"synthetic_actors", actor_json(c.synthetic_actors)},
          {"real_actors", actor_json(c.real_actors)},
          {"features", {c.features.frames, c.features.rows, c.features.cols}},
          {"learning_rate", c.train.learning_rate},
          {"finetune_learning_rate", c.train.finetune_learning_rate},
          {"discriminator_learning_rate", c.train.discriminator_learning_rate},
          {"lambda_adv", c.train.lambda_adv},
          {"epochs", c.train.epochs},
          {"finetune_epochs", c.train.finetune_epochs},
          {"single_domain_epochs", c.single_domain_epochs},
          {"batch_size", c.train.batch_size}};
}

OrderingSeedResult run_ordering_seed(const OrderingConfig& config, std::uint64_t seed,
                                     const ProgressFn& progress) {
  OrderingConfig c = config;
  if (c.classes.empty()) c.classes = genmodel::procedural_actions();
  if (c.test_bands.empty() || c.primary_band >= c.test_bands.size()) {
    throw InvalidArgument("ordering experiment needs a primary test band");
  }
  if (c.reduced_divisor < 1 || c.train_per_class % c.reduced_divisor != 0) {
    throw InvalidArgument("train_per_class must be a multiple of reduced_divisor");
  }
  const auto note = [&](const std::string& s) {
    if (progress) progress(s);
  };
  render::TextureCache cache;
  const genmodel::MotionLibrary real_library = library_for(c, c.real_actors, 2 * seed + 1);
  const genmodel::MotionLibrary synthetic_library = library_for(c, c.synthetic_actors, 2 * seed + 2);

  // Pseudo-real training videos, then one test set per band. Stream ranges
  // do not overlap, so the sets are independent.
  const std::uint64_t stride = 1u << 20;
  Domain train_part = render_domain(
      generation(c, seed, genmodel::Domain::kPseudoReal, c.train_per_class, 0), real_library,
      c.features, cache);
  std::vector<Domain> test_parts;
  for (std::size_t b = 0; b < c.test_bands.size(); ++b) {
    genmodel::GenerationConfig g =
        generation(c, seed, genmodel::Domain::kPseudoReal, c.test_per_class, (b + 1) * stride);
    g.nuisances.azimuth = {c.test_bands[b].lo, c.test_bands[b].hi};
    g.nuisances.texture_pool = randomize::procedural_texture_pool(3, c.test_texture_first);
    test_parts.push_back(render_domain(g, real_library, c.features, cache));
  }
  note("rendered pseudo-real domain");
  genmodel::GenerationConfig sg =
      generation(c, seed, genmodel::Domain::kSynthetic, c.synthetic_ratio * c.train_per_class,
                 (c.test_bands.size() + 1) * stride);
  sg.nuisances = c.synthetic_nuisances;
  Domain synthetic_part = render_domain(sg, synthetic_library, c.features, cache);
  note("rendered synthetic domain");

  // One pseudo-real manifest per band, split on the held-out factors.
  HeldOutFactors held;
  held.textures = randomize::procedural_texture_pool(3, c.test_texture_first);
  std::vector<learn::DomainDataset> tests;
  learn::DomainDataset real;
  OrderingSeedResult result;
  result.seed = seed;
  result.primary_band = c.primary_band;
  for (std::size_t b = 0; b < c.test_bands.size(); ++b) {
    genmodel::DatasetManifest m;
    m.records = train_part.records;
    m.records.insert(m.records.end(), test_parts[b].records.begin(),
                     test_parts[b].records.end());
    held.azimuth_bands = {c.test_bands[b]};
    const SplitSpec split = build_disjoint_split(m, held);
    result.discarded += split.excluded.size();
    tests.push_back(dataset_of({&test_parts[b]}, split.test, c.classes, "pseudo-real"));
    if (b == c.primary_band) real = dataset_of({&train_part}, split.train, c.classes, "pseudo-real");
  }
  const learn::DomainDataset synthetic = whole(synthetic_part, c.classes, "synthetic");
  result.train_videos = real.size();
  result.synthetic_videos = synthetic.size();

  // Reduced set: the first train_per_class / divisor videos of each class.
  learn::DomainDataset reduced = real;
  reduced.features.clear();
  reduced.labels.clear();
  std::vector<int> kept(c.classes.size(), 0);
  for (std::size_t i = 0; i < real.size(); ++i) {
    int& k = kept[static_cast<std::size_t>(real.labels[i])];
    if (k < c.train_per_class / c.reduced_divisor) {
      reduced.features.push_back(real.features[i]);
      reduced.labels.push_back(real.labels[i]);
      ++k;
    }
  }

  using learn::Strategy;
  const int single = c.single_domain_epochs;
  result.real_only = accuracies(c.train, Strategy::kRealOnly, seed, nullptr, &real, tests, single);
  note("real-only");
  result.synthetic_only =
      accuracies(c.train, Strategy::kSyntheticOnly, seed, &synthetic, nullptr, tests, single);
  note("synthetic-only");
  result.finetune =
      accuracies(c.train, Strategy::kFinetune, seed, &synthetic, &real, tests, single);
  note("finetune");
  result.adversarial =
      accuracies(c.train, Strategy::kAdversarial, seed, &synthetic, &real, tests, single);
  note("adversarial");
  result.real_only_reduced =
      accuracies(c.train, Strategy::kRealOnly, seed, nullptr, &reduced, tests, single);
  result.finetune_reduced =
      accuracies(c.train, Strategy::kFinetune, seed, &synthetic, &reduced, tests, single);
  note("reduced-data variant");
  return result;
}

OrderingSummary summarize(const std::vector<OrderingSeedResult>& results) {
  OrderingSummary s;
  if (results.empty()) return s;
  const std::size_t bands = results[0].real_only.size();
  s.mean_real_only.assign(bands, 0.0);
  for (const OrderingSeedResult& r : results) {
    const std::size_t p = r.primary_band;
    const double real_only = r.real_only.at(p);
    s.finetune_wins += r.finetune.at(p) > real_only;
    s.adversarial_wins += r.adversarial.at(p) > real_only;
    s.synthetic_lowest +=
        r.synthetic_only.at(p) < std::min({real_only, r.finetune.at(p), r.adversarial.at(p)});
    s.reduced_smaller_drop += r.finetune.at(p) - r.finetune_reduced.at(p) <
                              real_only - r.real_only_reduced.at(p);
    for (std::size_t b = 0; b < bands; ++b) {
      s.mean_real_only[b] += r.real_only[b] / static_cast<double>(results.size());
    }
  }
  s.real_only_monotonic = true;
  for (std::size_t b = 1; b < bands; ++b) {
    s.real_only_monotonic &= s.mean_real_only[b] < s.mean_real_only[b - 1];
  }
  return s;
}

}  // namespace rsa::harness
