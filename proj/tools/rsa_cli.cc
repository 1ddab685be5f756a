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


// Command-line front end: dataset generation, motion conversion, splits,
// training and evaluation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsa/common/error.h"
#include "rsa/genmodel/actions.h"
#include "rsa/genmodel/dataset.h"
#include "rsa/harness/data.h"
#include "rsa/harness/metrics.h"
#include "rsa/harness/run_record.h"
#include "rsa/harness/split.h"
#include "rsa/learn/train.h"
#include "rsa/learn/weights.h"
#include "rsa/motion/bvh.h"
#include "rsa/motion/kinematics.h"
#include "rsa/motion/positions_io.h"
#include "rsa/randomize/key_value.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rsa;

namespace {

// Exit codes.
constexpr int kInvalidArgument = 3;
constexpr int kParseError = 4;
constexpr int kIoError = 5;
constexpr int kFailure = 1;

int report_error(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path p = path;
  p.replace_extension();
  return p.string() + suffix;
}

// ---- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> domain;
};

template <typename T>
T value_or(std::optional<T> v, T fallback) {
  return v ? *v : fallback;
}

int cmd_generate(const GenerateArgs& a) {
  const randomize::KeyValueConfig kv = randomize::KeyValueConfig::read_file(a.config);
  const fs::path config_dir = fs::absolute(a.config).parent_path();

  genmodel::GenerationConfig g;
  g.domain = genmodel::parse_domain(
      a.domain ? *a.domain : value_or(kv.get_string("domain"), std::string("synthetic")));
  g.master_seed = a.seed ? *a.seed : static_cast<std::uint64_t>(value_or(kv.get_int("seed"), 0LL));
  g.classes = value_or(kv.get_list("classes"), genmodel::procedural_actions());
  g.videos_per_class = static_cast<int>(value_or(kv.get_int("videos_per_class"), 1LL));
  g.first_stream = static_cast<std::uint64_t>(value_or(kv.get_int("first_stream"), 0LL));
  if (kv.has("scenes")) g.scene_ids = *kv.get_list("scenes");

  const bool pseudo_real = g.domain == genmodel::Domain::kPseudoReal;
  g.nuisances = randomize::nuisance_config_from(
      kv, pseudo_real ? genmodel::pseudo_real_nuisance_config()
                      : randomize::default_nuisance_config());
  if (pseudo_real) g.clip.render = genmodel::pseudo_real_render_settings();
  g.clip.frame_count = static_cast<int>(value_or(kv.get_int("frames"), 32LL));
  g.clip.frame_rate = value_or(kv.get_double("frame_rate"), 30.0);
  render::RenderSettings& r = g.clip.render;
  r.camera.width = static_cast<int>(value_or(kv.get_int("width"), 640LL));
  r.camera.height = static_cast<int>(value_or(kv.get_int("height"), 480LL));
  r.camera.fov_deg = value_or(kv.get_double("fov"), r.camera.fov_deg);
  r.gamma = value_or(kv.get_double("gamma"), r.gamma);
  r.sensor_noise = value_or(kv.get_double("sensor_noise"), r.sensor_noise);
  if (kv.has("gain")) {
    const std::vector<std::string> gain = *kv.get_list("gain");
    if (gain.size() != 3) throw InvalidArgument("gain needs three values");
    for (int c = 0; c < 3; ++c) r.color_gain[c] = std::stod(gain[c]);
  }
  const std::string format = value_or(kv.get_string("format"), std::string("png"));
  if (format != "png" && format != "ppm") throw InvalidArgument("format must be png or ppm");
  g.clip.format = format == "png" ? render::FrameFormat::kPng : render::FrameFormat::kPpm;

  if (kv.has("library_dir")) {
    fs::path dir = *kv.get_string("library_dir");
    if (dir.is_relative()) dir = config_dir / dir;
    g.library = {{"kind", "directory"}, {"path", fs::absolute(dir).string()}};
  } else {
    g.library = genmodel::procedural_library_descriptor(
        static_cast<std::uint64_t>(value_or(kv.get_int("library_seed"), 0LL)),
        static_cast<int>(value_or(kv.get_int("library_clips"), 4LL)));
  }
  const genmodel::MotionLibrary library = genmodel::resolve_library(g.library);
  g.output_root = a.out;

  const genmodel::DatasetManifest m = genmodel::generate_dataset(g, library);
  harness::write_run_record(fs::path(a.out) / "run.json", "generate",
                            json{{"config", kv.canonical_text()},
                                 {"domain", genmodel::domain_name(g.domain)}},
                            g.master_seed, {{"manifest", genmodel::kManifestFile}});
  std::printf("generated %zu videos in %s\n", m.records.size(), a.out.c_str());
  return 0;
}

// ---- make-library / convert-motion ---------------------------------------

int cmd_make_library(const std::string& out, std::uint64_t seed, int clips,
                     const std::vector<std::string>& actions) {
  genmodel::ProceduralLibraryOptions opt;
  if (!actions.empty()) opt.actions = actions;
  opt.clips_per_action = clips;
  const genmodel::MotionLibrary lib = genmodel::build_procedural_library(opt, seed);
  genmodel::save_motion_library(lib, out);
  std::printf("wrote %zu clips to %s\n", lib.size(), out.c_str());
  return 0;
}

int cmd_convert_motion(const std::string& positions, const std::string& topology,
                       const std::string& out) {
  const motion::BuiltinTopology& topo = motion::builtin_topology(topology);
  const motion::PositionSequence seq = motion::read_positions_file(positions, topo);
  const motion::MotionClip clip =
      motion::positions_to_local_rotations(topo.topology, seq.frames, seq.frame_time);
  motion::write_bvh_file(out, clip);
  std::printf("wrote %zu frames to %s\n", clip.frames.size(), out.c_str());
  return 0;
}

// ---- split ---------------------------------------------------------------

struct SplitArgs {
  std::string manifest;
  std::string loso;
  std::vector<std::string> azimuth;
  std::vector<std::string> textures;
  std::vector<std::string> humanoids;
  std::string out;
};

int cmd_split(const SplitArgs& a) {
  const genmodel::DatasetManifest m = genmodel::load_manifest(a.manifest);
  harness::SplitSpec s;
  if (!a.loso.empty()) {
    s = harness::build_loso_split(m, a.loso);
  } else {
    harness::HeldOutFactors h;
    for (const std::string& b : a.azimuth) h.azimuth_bands.push_back(harness::parse_azimuth_band(b));
    h.textures = a.textures;
    h.humanoid_ids = a.humanoids;
    s = harness::build_disjoint_split(m, h);
  }
  harness::check_split(s, m);
  const fs::path out = a.out.empty() ? fs::path(a.manifest).parent_path() / "split.json"
                                     : fs::path(a.out);
  harness::save_split(out, s);
  std::printf("train %zu, test %zu, excluded %zu -> %s\n", s.train.size(), s.test.size(),
              s.excluded.size(), out.string().c_str());
  return 0;
}

// ---- train / eval ----------------------------------------------------------

struct TrainArgs {
  std::string strategy;
  std::string synthetic;
  std::string real;
  std::string split;
  std::string out;
  std::uint64_t seed = 0;
  learn::TrainConfig config;
  std::optional<double> finetune_rate;
};

int cmd_train(TrainArgs a) {
  learn::TrainConfig& c = a.config;
  c.strategy = learn::parse_strategy(a.strategy);
  c.seed = a.seed;
  c.finetune_learning_rate = a.finetune_rate ? *a.finetune_rate
                                             : learn::default_finetune_rate(c.learning_rate);
  c.validate();
  const learn::FeatureConfig features;

  std::optional<genmodel::DatasetManifest> syn_m, real_m;
  if (!a.synthetic.empty()) syn_m = genmodel::load_manifest(a.synthetic);
  if (!a.real.empty()) real_m = genmodel::load_manifest(a.real);
  if (!syn_m && !real_m) throw InvalidArgument("train needs --synthetic and/or --real");
  const std::vector<std::string> classes = harness::manifest_classes(real_m ? *real_m : *syn_m);

  // The split selects training videos of the real manifest, or of the
  // synthetic one when no real manifest is given.
  std::vector<std::string> split_ids;
  if (!a.split.empty()) {
    const harness::SplitSpec s = harness::load_split(a.split);
    harness::check_split(s, real_m ? *real_m : *syn_m);
    split_ids = s.train;
    if (split_ids.empty()) throw InvalidArgument("split has no training videos");
  }
  std::optional<learn::DomainDataset> syn, real;
  if (syn_m) syn = harness::load_dataset(*syn_m, real_m ? std::vector<std::string>{} : split_ids,
                                         classes, features);
  if (real_m) real = harness::load_dataset(*real_m, split_ids, classes, features);

  const learn::TrainedModel m =
      learn::train(c, {syn ? &*syn : nullptr, real ? &*real : nullptr});
  learn::save_weights(a.out, m.classifier);
  const std::string curve = with_suffix(a.out, ".loss.csv");
  write_text(curve, learn::loss_curve_csv(m.curve));
  const json config{{"strategy", a.strategy},
                    {"synthetic", a.synthetic},
                    {"real", a.real},
                    {"split", a.split},
                    {"learning_rate", c.learning_rate},
                    {"finetune_learning_rate", c.finetune_learning_rate},
                    {"discriminator_learning_rate", c.discriminator_learning_rate},
                    {"lambda_adv", c.lambda_adv},
                    {"epochs", c.epochs},
                    {"finetune_epochs", c.finetune_epochs},
                    {"batch_size", c.batch_size},
                    {"hidden", c.shape.hidden},
                    {"latent", c.shape.latent}};
  harness::write_run_record(with_suffix(a.out, ".run.json"), "train", config, a.seed,
                            {{"weights", a.out}, {"loss_curve", curve}});
  std::printf("trained %s on %zu synthetic + %zu real videos -> %s\n", a.strategy.c_str(),
              syn ? syn->size() : 0, real ? real->size() : 0, a.out.c_str());
  return 0;
}

int cmd_eval(const std::string& weights, const std::string& manifest, const std::string& split,
             const std::string& report) {
  const learn::ClassifierModel model = learn::load_weights(weights);
  const genmodel::DatasetManifest m = genmodel::load_manifest(manifest);
  std::vector<std::string> ids;
  if (!split.empty()) {
    const harness::SplitSpec s = harness::load_split(split);
    harness::check_split(s, m);
    ids = s.test;
    if (ids.empty()) throw InvalidArgument("split has no test videos");
  }
  const learn::DomainDataset ds =
      harness::load_dataset(m, ids, model.classes, learn::FeatureConfig{});
  const harness::Metrics metrics = harness::evaluate(model, ds);
  write_text(report, harness::report_csv(metrics));
  const std::string confusion = with_suffix(report, ".confusion.csv");
  write_text(confusion, harness::confusion_csv(metrics));
  json flags = json::array();
  for (std::size_t c = 0; c < metrics.classes.size(); ++c) {
    if (metrics.per_class[c].f1_undefined) flags.push_back(metrics.classes[c]);
  }
  harness::write_run_record(with_suffix(report, ".run.json"), "eval",
                            {{"weights", weights}, {"manifest", manifest}, {"split", split}}, 0,
                            {{"report", report},
                             {"confusion", confusion},
                             {"accuracy", metrics.accuracy},
                             {"macro_f1", metrics.macro_f1},
                             {"undefined_f1", flags}});
  std::printf("accuracy %.4f, macro F1 %.4f on %zu videos\n", metrics.accuracy, metrics.macro_f1,
              metrics.total);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized synthetic action data: generation, training, evaluation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Render a dataset and its manifest");
  generate->add_option("--config", gen.config, "key = value config file")->required()->check(CLI::ExistingFile);
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--seed", gen.seed, "Master seed (overrides the config)");
  generate->add_option("--domain", gen.domain, "synthetic, pseudo-real or real");

  std::string lib_out;
  std::uint64_t lib_seed = 0;
  int lib_clips = 4;
  std::vector<std::string> lib_actions;
  CLI::App* make_library = app.add_subcommand("make-library", "Write a procedural motion library");
  make_library->add_option("--out", lib_out, "Library directory")->required();
  make_library->add_option("--seed", lib_seed, "Library seed");
  make_library->add_option("--clips", lib_clips, "Clips per action");
  make_library->add_option("--actions", lib_actions, "Actions (default: all)")->delimiter(',');

  std::string positions, topology, bvh_out;
  CLI::App* convert = app.add_subcommand("convert-motion", "Joint positions to BVH rotations");
  convert->add_option("--positions", positions, "Positions file")->required()->check(CLI::ExistingFile);
  convert->add_option("--topology", topology, "Built-in topology name")->required();
  convert->add_option("--out", bvh_out, "Output .bvh")->required();

  SplitArgs sp;
  CLI::App* split = app.add_subcommand("split", "Build a train/test split");
  split->add_option("--manifest", sp.manifest, "manifest.jsonl")->required()->check(CLI::ExistingFile);
  CLI::Option* loso = split->add_option("--loso", sp.loso, "Scene id to leave out");
  CLI::Option* az = split->add_option("--hold-azimuth", sp.azimuth, "Azimuth band lo:hi (degrees)");
  CLI::Option* tex = split->add_option("--hold-texture", sp.textures, "Texture ids")->delimiter(',');
  CLI::Option* hum = split->add_option("--hold-humanoid", sp.humanoids, "Humanoid ids")->delimiter(',');
  loso->excludes(az)->excludes(tex)->excludes(hum);
  split->add_option("--out", sp.out, "Split file (default: split.json next to the manifest)");

  TrainArgs tr;
  CLI::App* train = app.add_subcommand("train", "Train a classifier");
  train->add_option("--strategy", tr.strategy,
                    "real-only, synthetic-only, joint, finetune or adversarial")->required();
  train->add_option("--synthetic", tr.synthetic, "Synthetic manifest");
  train->add_option("--real", tr.real, "Real or pseudo-real manifest");
  train->add_option("--split", tr.split, "Split file; its train ids are used");
  train->add_option("--out", tr.out, "Weights file")->required();
  train->add_option("--seed", tr.seed, "Training seed");
  train->add_option("--epochs", tr.config.epochs, "Epochs (pretraining for finetune)");
  train->add_option("--finetune-epochs", tr.config.finetune_epochs, "Finetuning epochs");
  train->add_option("--lr", tr.config.learning_rate, "Learning rate");
  train->add_option("--finetune-lr", tr.finetune_rate, "Finetuning rate (default lr / 10)");
  train->add_option("--discriminator-lr", tr.config.discriminator_learning_rate, "Discriminator rate");
  train->add_option("--lambda", tr.config.lambda_adv, "Adversarial weight");
  train->add_option("--batch", tr.config.batch_size, "Batch size");

  std::string ev_weights, ev_manifest, ev_split, ev_report;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate weights on a manifest");
  eval->add_option("--weights", ev_weights, "Weights file")->required()->check(CLI::ExistingFile);
  eval->add_option("--manifest", ev_manifest, "manifest.jsonl")->required()->check(CLI::ExistingFile);
  eval->add_option("--split", ev_split, "Split file; its test ids are used");
  eval->add_option("--report", ev_report, "Report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*make_library) return cmd_make_library(lib_out, lib_seed, lib_clips, lib_actions);
    if (*convert) return cmd_convert_motion(positions, topology, bvh_out);
    if (*split) {
      if (sp.loso.empty() && sp.azimuth.empty() && sp.textures.empty() && sp.humanoids.empty()) {
        throw InvalidArgument("split needs --loso or at least one --hold-* option");
      }
      return cmd_split(sp);
    }
    if (*train) return cmd_train(tr);
    if (*eval) return cmd_eval(ev_weights, ev_manifest, ev_split, ev_report);
  } catch (const ParseError& e) {
    return report_error("parse_error", e.what(), kParseError);
  } catch (const InvalidArgument& e) {
    return report_error("invalid_argument", e.what(), kInvalidArgument);
  } catch (const IoError& e) {
    return report_error("io_error", e.what(), kIoError);
  } catch (const std::exception& e) {
    return report_error("failure", e.what(), kFailure);
  }
  return kFailure;
}
