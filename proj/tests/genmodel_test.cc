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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rsa/common/error.h"
#include "rsa/genmodel/actions.h"
#include "rsa/genmodel/dataset.h"
#include "rsa/genmodel/motion_library.h"
#include "rsa/genmodel/toy_model.h"
#include "rsa/motion/builtin_topologies.h"
#include "rsa/motion/bvh.h"
#include "rsa/motion/kinematics.h"
#include "support/test_support.h"

namespace rsa::genmodel {
namespace {

namespace fs = std::filesystem;
using motion::Vec3;

const MotionLibrary& small_library() {
  static const MotionLibrary library = [] {
    ProceduralLibraryOptions options;
    options.clips_per_action = 2;
    options.frames = 24;
    return build_procedural_library(options, 11);
  }();
  return library;
}

GenerationConfig tiny_config(const fs::path& root) {
  GenerationConfig c;
  c.master_seed = 5;
  c.videos_per_class = 3;
  c.classes = {"wave", "squat"};
  c.clip.frame_count = 2;
  c.clip.render.camera = {64, 48, 60.0, 0.1};
  c.output_root = root;
  c.scene_ids = {"a", "b"};
  c.library = procedural_library_descriptor(11, 2);
  return c;
}

std::string file_bytes(const fs::path& p) { return testing::read_text(p); }

// Every file under `dir`, relative path -> bytes.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = file_bytes(e.path());
  }
  return out;
}

TEST(Actions, EveryActionStandsOnTheFloor) {
  for (const std::string& action : procedural_actions()) {
    ActorParams actor;
    const motion::MotionClip clip = synthesize_action(action, actor, 40, 1.0 / 30.0);
    motion::validate_clip(clip);
    for (const motion::Pose& pose : clip.frames) {
      double lowest = 1e9;
      for (const Vec3& p : motion::forward_kinematics(clip.topology, pose)) {
        lowest = std::min(lowest, p.y());
      }
      if (action == "jumping_jack") {
        EXPECT_GE(lowest, -1e-12) << action;
      } else {
        EXPECT_NEAR(lowest, 0.0, 1e-12) << action;
      }
    }
  }
}

TEST(Actions, MirroredWaveRaisesTheOtherHand) {
  const auto& topo = motion::kinect25().topology;
  const std::size_t left = *topo.find("HandLeft");
  const std::size_t right = *topo.find("HandRight");
  ActorParams actor;
  const auto plain = synthesize_action("wave", actor, 1, 0.1);
  actor.mirrored = true;
  const auto mirrored = synthesize_action("wave", actor, 1, 0.1);
  const auto p = motion::forward_kinematics(topo, plain.frames[0]);
  const auto m = motion::forward_kinematics(topo, mirrored.frames[0]);
  EXPECT_GT(p[right].y(), p[left].y() + 0.5);
  EXPECT_GT(m[left].y(), m[right].y() + 0.5);
  EXPECT_NEAR(m[left].x(), -p[right].x(), 1e-12);
  EXPECT_NEAR(m[left].y(), p[right].y(), 1e-12);
}

TEST(Actions, UnknownActionIsRejected) {
  EXPECT_THROW(synthesize_action("fly", {}, 4, 0.1), InvalidArgument);
  ProceduralLibraryOptions options;
  options.actions = {"wave", "fly"};
  EXPECT_THROW(build_procedural_library(options, 1), InvalidArgument);
}

TEST(Actions, CaptureNoiseStaysSmall) {
  const auto truth = synthesize_action("squat", {}, 10, 1.0 / 30.0);
  randomize::Pcg32 rng(3, 4);
  const auto captured = simulate_capture(truth, 0.005, rng);
  const double height = truth.topology.height();
  for (std::size_t f = 0; f < truth.frames.size(); ++f) {
    const auto a = motion::forward_kinematics(truth.topology, truth.frames[f]);
    const auto b = motion::forward_kinematics(captured.topology, captured.frames[f]);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_LT((a[j] - b[j]).norm(), 0.05 * height);
  }
}

TEST(MotionLibrary, ProceduralLibraryHasEveryActionAndIsDeterministic) {
  const MotionLibrary& lib = small_library();
  EXPECT_EQ(lib.labels().size(), 6u);
  EXPECT_EQ(lib.size(), 12u);
  ProceduralLibraryOptions options;
  options.clips_per_action = 2;
  options.frames = 24;
  const MotionLibrary again = build_procedural_library(options, 11);
  for (const std::string& a : lib.labels()) {
    for (const LibraryClip& c : lib.clips(a)) {
      EXPECT_EQ(motion::write_bvh(c.clip), motion::write_bvh(again.clip(a, c.id).clip));
    }
  }
}

TEST(MotionLibrary, SaveLoadRoundTripIsExact) {
  const fs::path dir = testing::scratch_dir("library");
  save_motion_library(small_library(), dir);
  EXPECT_TRUE(fs::exists(dir / "wave" / "wave_0.bvh"));
  const MotionLibrary loaded = load_motion_library(dir);
  ASSERT_EQ(loaded.labels(), small_library().labels());
  for (const std::string& a : loaded.labels()) {
    ASSERT_EQ(loaded.clips(a).size(), small_library().clips(a).size());
    for (const LibraryClip& c : loaded.clips(a)) {
      EXPECT_EQ(motion::write_bvh(c.clip), motion::write_bvh(small_library().clip(a, c.id).clip));
    }
  }
}

TEST(MotionLibrary, RejectsDuplicatesAndInvalidClips) {
  MotionLibrary lib;
  const auto clip = synthesize_action("bow", {}, 2, 0.1);
  lib.add("bow", "x", clip);
  EXPECT_THROW(lib.add("bow", "x", clip), InvalidArgument);
  motion::MotionClip bad = clip;
  bad.frames[1].local_rotations[3].coeffs() *= 2.0;
  EXPECT_THROW(lib.add("bow", "y", bad), InvalidArgument);
  EXPECT_THROW(load_motion_library(testing::scratch_dir("empty-library")), IoError);
}

TEST(SampleMotion, SingletonAlwaysReturnsThatClip) {
  MotionLibrary lib;
  lib.add("kick", "only", synthesize_action("kick", {}, 2, 0.1));
  randomize::RngStream stream = randomize::derive_stream(1, 2);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sample_motion(lib, "kick", stream).id, "only");
}

TEST(SampleMotion, UniformOverFourClips) {
  MotionLibrary lib;
  const auto clip = synthesize_action("kick", {}, 2, 0.1);
  for (int k = 0; k < 4; ++k) lib.add("kick", "c" + std::to_string(k), clip);
  randomize::RngStream stream = randomize::derive_stream(2024, 0);
  std::map<std::string, int> counts;
  for (int i = 0; i < 4000; ++i) ++counts[sample_motion(lib, "kick", stream).id];
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [id, n] : counts) {
    EXPECT_GE(n / 4000.0, 0.22) << id;
    EXPECT_LE(n / 4000.0, 0.28) << id;
  }
}

TEST(SampleMotion, DeterministicInTheStream) {
  randomize::RngStream a = randomize::derive_stream(9, 9);
  randomize::RngStream b = a;
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(sample_motion(small_library(), "bow", a).id,
              sample_motion(small_library(), "bow", b).id);
  }
}

TEST(SampleMotion, UnknownActionListsLabels) {
  randomize::RngStream stream = randomize::derive_stream(0, 0);
  try {
    sample_motion(small_library(), "fly", stream);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("fly"), std::string::npos);
    EXPECT_NE(msg.find("jumping_jack"), std::string::npos);
    EXPECT_NE(msg.find("wave"), std::string::npos);
  }
}

TEST(GenerationConfig, Validation) {
  GenerationConfig c = tiny_config("/tmp/unused");
  EXPECT_NO_THROW(c.validate(small_library()));
  GenerationConfig bad = c;
  bad.videos_per_class = 0;
  EXPECT_THROW(bad.validate(small_library()), InvalidArgument);
  bad = c;
  bad.classes.clear();
  EXPECT_THROW(bad.validate(small_library()), InvalidArgument);
  bad = c;
  bad.classes = {"wave", "fly"};
  EXPECT_THROW(bad.validate(small_library()), InvalidArgument);
  bad = c;
  bad.classes = {"wave", "wave"};
  EXPECT_THROW(bad.validate(small_library()), InvalidArgument);
  bad = c;
  bad.scene_ids.clear();
  EXPECT_THROW(bad.validate(small_library()), InvalidArgument);
}

TEST(PlanVideos, RecordsAreUniqueAndDeterministic) {
  const GenerationConfig c = tiny_config("/tmp/unused");
  const auto a = plan_videos(c, small_library());
  const auto b = plan_videos(c, small_library());
  ASSERT_EQ(a.size(), 6u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_json(a[i]), to_json(b[i]));
    EXPECT_TRUE(ids.insert(a[i].video_id).second);
    EXPECT_EQ(a[i].stream_id, i);
    EXPECT_TRUE(c.nuisances.azimuth.contains(a[i].nuisances.camera.azimuth));
    EXPECT_GE(a[i].start_time, 0.0);
    EXPECT_LT(a[i].start_time,
              small_library().clip(a[i].action, a[i].motion_id).clip.duration());
  }
  EXPECT_EQ(a[0].action, "wave");
  EXPECT_EQ(a[5].action, "squat");
  EXPECT_EQ(a[0].scene_id, "a");
  EXPECT_EQ(a[1].scene_id, "b");
  EXPECT_EQ(a[2].scene_id, "a");
}

TEST(PlanVideos, StreamOffsetKeepsSetsIndependent) {
  GenerationConfig c = tiny_config("/tmp/unused");
  const auto a = plan_videos(c, small_library());
  c.first_stream = 6;
  const auto b = plan_videos(c, small_library());
  for (const auto& r : b) {
    EXPECT_GE(r.stream_id, 6u);
    for (const auto& s : a) EXPECT_NE(r.video_id, s.video_id);
  }
  EXPECT_NE(a[0].nuisances, b[0].nuisances);
}

TEST(BuildScene, RetargetedHumanoidKeepsFloorContact) {
  GenerationConfig c = tiny_config(testing::scratch_dir("ground"));
  c.classes = procedural_actions();
  c.videos_per_class = 4;
  const std::vector<VideoRecord> plan = plan_videos(c, small_library());
  for (const VideoRecord& r : plan) {
    const render::SceneDescription scene = build_scene(r, c.clip, small_library());
    for (const motion::Pose& pose : scene.motion.frames) {
      double lowest = 1e9;
      for (const Vec3& p : motion::forward_kinematics(scene.motion.topology, pose)) {
        lowest = std::min(lowest, p.y());
      }
      EXPECT_GE(lowest, -1e-9) << r.video_id;
    }
  }
}

TEST(GenerateDataset, TwoClassesThreeVideos) {
  const fs::path root = testing::scratch_dir("gen");
  const DatasetManifest m = generate_dataset(tiny_config(root), small_library());
  ASSERT_EQ(m.records.size(), 6u);
  EXPECT_TRUE(m.complete());
  int dirs = 0;
  for (const auto& e : fs::directory_iterator(root)) dirs += e.is_directory();
  EXPECT_EQ(dirs, 6);
  for (const VideoRecord& r : m.records) {
    EXPECT_EQ(r.files.size(), 5u);  // 2 frames, 2 masks, joints.txt
    for (const std::string& f : r.files) EXPECT_TRUE(fs::exists(root / r.directory / f)) << f;
  }
  const DatasetManifest loaded = load_manifest(root / kManifestFile);
  ASSERT_EQ(loaded.records.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(to_json(loaded.records[i]), to_json(m.records[i]));
  }
  EXPECT_EQ(loaded.header, m.header);
  EXPECT_EQ(clip_settings(loaded).render.camera.width, 64);
}

TEST(GenerateDataset, SameConfigTwiceIsByteIdentical) {
  const fs::path a = testing::scratch_dir("gen-a");
  const fs::path b = testing::scratch_dir("gen-b");
  generate_dataset(tiny_config(a), small_library());
  GenerationConfig cb = tiny_config(b);
  generate_dataset(cb, small_library());
  const auto ta = tree(a);
  const auto tb = tree(b);
  ASSERT_EQ(ta.size(), tb.size());
  for (const auto& [name, bytes] : ta) {
    ASSERT_TRUE(tb.count(name)) << name;
    EXPECT_TRUE(bytes == tb.at(name)) << name;
  }
}

TEST(GenerateDataset, RegenerationFromTheLoadedManifestIsByteIdentical) {
  const fs::path root = testing::scratch_dir("regen");
  GenerationConfig c = tiny_config(root);
  c.clip.render.sensor_noise = 4.0;
  c.clip.render.gamma = 0.9;
  generate_dataset(c, small_library());
  const DatasetManifest m = load_manifest(root / kManifestFile);
  const MotionLibrary library = resolve_library(m.header.at("library"), m.root);
  for (const VideoRecord& r : m.records) {
    const fs::path out = testing::scratch_dir("regen-one");
    const auto files = regenerate_video(m, library, r.video_id, out);
    EXPECT_EQ(files, r.files);
    for (const std::string& f : files) {
      EXPECT_TRUE(file_bytes(out / f) == file_bytes(root / r.directory / f)) << f;
    }
  }
}

TEST(GenerateDataset, RenderFailureLeavesAnIncompleteManifest) {
  const fs::path root = testing::scratch_dir("fail");
  GenerationConfig c = tiny_config(root);
  c.nuisances.texture_pool = {"file:" + (root / "missing.png").string()};
  EXPECT_THROW(generate_dataset(c, small_library()), Error);
  ASSERT_TRUE(fs::exists(root / kManifestFile));
  EXPECT_THROW(load_manifest(root / kManifestFile), InvalidArgument);
  const DatasetManifest partial = load_manifest(root / kManifestFile, true);
  EXPECT_FALSE(partial.complete());
  EXPECT_TRUE(partial.records.empty());
}

TEST(GenerateDataset, UnwritableOutputIsAnIoError) {
  const fs::path root = testing::scratch_dir("blocked");
  std::ofstream(root / "file") << "x";
  EXPECT_THROW(generate_dataset(tiny_config(root / "file" / "sub"), small_library()), IoError);
}

TEST(Manifest, MalformedLinesReportTheLine) {
  const fs::path root = testing::scratch_dir("bad-manifest");
  generate_dataset(tiny_config(root), small_library());
  std::string text = file_bytes(root / kManifestFile);
  text += "{not json\n";
  std::ofstream(root / "broken.jsonl", std::ios::binary) << text;
  try {
    load_manifest(root / "broken.jsonl");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
  }
  std::ofstream(root / "nohdr.jsonl") << "{\"video_id\": \"x\"}\n";
  EXPECT_THROW(load_manifest(root / "nohdr.jsonl"), ParseError);
}

TEST(Sizing, SyntheticDefaultsToFourTimesTheRealSet) {
  EXPECT_EQ(default_synthetic_videos(100), 400);
  EXPECT_EQ(default_synthetic_videos(240), 960);
}

TEST(PseudoReal, NarrowConfigIsValidAndFixesTheHumanoid) {
  const randomize::NuisanceConfig c = pseudo_real_nuisance_config();
  EXPECT_NO_THROW(c.validate());
  randomize::RngStream s1 = randomize::derive_stream(1, 1);
  randomize::RngStream s2 = randomize::derive_stream(1, 2);
  const auto a = randomize::sample_nuisances(c, s1);
  const auto b = randomize::sample_nuisances(c, s2);
  EXPECT_EQ(humanoid_id(a.humanoid), humanoid_id(b.humanoid));
  EXPECT_LE(std::abs(a.camera.azimuth), 30.0);
}

// --- toy generative model ----------------------------------------------

// Independent enumeration: recursion over factors, tuple index built as a
// mixed-radix number (action, motion, nuisances in order).
std::vector<double> brute_force_posterior(const ToyGenerativeModel& m, int x) {
  const std::size_t A = m.p_action.size();
  const std::size_t M = m.p_motion[0].size();
  std::vector<double> score(A, 0.0);
  std::function<void(std::size_t, std::size_t, std::size_t, double, std::size_t)> rec =
      [&](std::size_t a, std::size_t factor, std::size_t index, double p, std::size_t) {
        if (factor == m.p_nuisance.size()) {
          if (m.observation[index] == x) score[a] += p;
          return;
        }
        for (std::size_t v = 0; v < m.p_nuisance[factor].size(); ++v) {
          rec(a, factor + 1, index * m.p_nuisance[factor].size() + v,
              p * m.p_nuisance[factor][v], 0);
        }
      };
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t mo = 0; mo < M; ++mo) {
      rec(a, 0, a * M + mo, m.p_action[a] * m.p_motion[a][mo], 0);
    }
  }
  double z = 0.0;
  for (double s : score) z += s;
  for (double& s : score) s /= z;
  return score;
}

TEST(ToyModel, InjectiveGeneratorGivesOneHotPosterior) {
  ToyGenerativeModel m;
  m.p_action = {0.2, 0.3, 0.5};
  m.p_motion = {{1.0}, {1.0}, {1.0}};
  m.p_nuisance = {{1.0}};
  m.observation_count = 3;
  m.observation = {2, 0, 1};
  EXPECT_EQ(exact_posterior(m, 0), (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(exact_posterior(m, 1), (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_EQ(exact_posterior(m, 2), (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(ToyModel, IndistinguishableActionsWithEqualPriorsSplitEvenly) {
  ToyGenerativeModel m;
  m.p_action = {0.5, 0.5};
  m.p_motion = {{0.3, 0.7}, {0.3, 0.7}};
  m.p_nuisance = {{0.5, 0.5}};
  m.observation_count = 2;
  m.observation = {0, 1, 1, 0, 0, 1, 1, 0};
  for (int x = 0; x < 2; ++x) {
    const auto p = exact_posterior(m, x);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
  }
}

TEST(ToyModel, AsymmetricModelMatchesBruteForce) {
  ToyGenerativeModel m;
  m.p_action = {0.5, 0.3, 0.2};
  m.p_motion = {{0.9, 0.1}, {0.25, 0.75}, {0.6, 0.4}};
  m.p_nuisance = {{0.7, 0.3}};
  m.observation_count = 4;
  m.observation = {0, 1, 2, 0, 1, 1, 3, 2, 0, 3, 2, 2};
  for (int x = 0; x < 4; ++x) {
    const auto p = exact_posterior(m, x);
    const auto q = brute_force_posterior(m, x);
    for (std::size_t a = 0; a < 3; ++a) EXPECT_NEAR(p[a], q[a], 1e-12);
  }
  // Hand check for x = 3: tuples (1,1,0) and (2,0,1).
  const double t1 = 0.3 * 0.75 * 0.7;
  const double t2 = 0.2 * 0.6 * 0.3;
  const auto p3 = exact_posterior(m, 3);
  EXPECT_NEAR(p3[1], t1 / (t1 + t2), 1e-15);
  EXPECT_NEAR(p3[2], t2 / (t1 + t2), 1e-15);
  EXPECT_EQ(p3[0], 0.0);
}

TEST(ToyModel, RandomModelsAgreeWithBruteForceAndConserveMass) {
  randomize::Pcg32 rng(77, 1);
  for (int trial = 0; trial < 30; ++trial) {
    ToyShape shape;
    shape.actions = 1 + static_cast<int>(rng.bounded(3));
    shape.motions = 1 + static_cast<int>(rng.bounded(3));
    shape.nuisance_values.clear();
    const int factors = static_cast<int>(rng.bounded(3));
    for (int i = 0; i < factors; ++i) shape.nuisance_values.push_back(1 + rng.bounded(4));
    int tuples = shape.actions * shape.motions;
    for (int v : shape.nuisance_values) tuples *= v;
    shape.observations = 1 + static_cast<int>(rng.bounded(std::min(tuples, 6)));
    const ToyGenerativeModel m = random_toy_model(shape, rng);
    const auto px = observation_marginal(m);
    std::vector<double> recovered(m.p_action.size(), 0.0);
    for (int x = 0; x < m.observation_count; ++x) {
      const auto p = exact_posterior(m, x);
      const auto q = brute_force_posterior(m, x);
      double sum = 0.0;
      for (std::size_t a = 0; a < p.size(); ++a) {
        EXPECT_GE(p[a], 0.0);
        EXPECT_NEAR(p[a], q[a], 1e-12);
        sum += p[a];
        recovered[a] += p[a] * px[static_cast<std::size_t>(x)];
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    for (std::size_t a = 0; a < recovered.size(); ++a) {
      EXPECT_NEAR(recovered[a], m.p_action[a], 1e-9);
    }
  }
}

TEST(ToyModel, ZeroProbabilityObservationIsAnError) {
  ToyGenerativeModel m;
  m.p_action = {0.5, 0.5};
  m.p_motion = {{1.0}, {1.0}};
  m.observation_count = 3;
  m.observation = {0, 1};
  EXPECT_THROW(exact_posterior(m, 2), InvalidArgument);
  EXPECT_THROW(exact_posterior(m, 3), InvalidArgument);
  m.p_action = {0.5, 0.6};
  EXPECT_THROW(m.validate(), InvalidArgument);
}

TEST(ToyModel, AncestralSamplesMatchTheJointTable) {
  randomize::Pcg32 rng(5, 5);
  ToyShape shape;
  const ToyGenerativeModel m = random_toy_model(shape, rng);
  const std::size_t n = 200000;
  const auto draws = sample_toy(m, n, rng);
  const auto px = observation_marginal(m);
  std::vector<std::vector<double>> counts(px.size(), std::vector<double>(3, 0.0));
  for (const ToyDraw& d : draws) counts[d.observation][d.action] += 1.0;
  for (std::size_t x = 0; x < px.size(); ++x) {
    const auto post = exact_posterior(m, static_cast<int>(x));
    for (std::size_t a = 0; a < 3; ++a) {
      const double expected = px[x] * post[a];
      EXPECT_NEAR(counts[x][a] / n, expected, 5.0 * std::sqrt(expected / n) + 1e-4);
    }
  }
}

}  // namespace
}  // namespace rsa::genmodel
