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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rsa/common/error.h"
#include "rsa/motion/builtin_topologies.h"
#include "rsa/motion/kinematics.h"
#include "rsa/randomize/key_value.h"
#include "rsa/randomize/nuisance.h"
#include "support/test_support.h"

namespace rsa::randomize {
namespace {

TEST(KeyValueTest, ParsesRangesListsAndOverrides) {
  const KeyValueConfig kv = KeyValueConfig::parse(
      "# comment\n\ncamera_distance = 2.5 4\nazimuth=10, 20\n"
      "texture_pool = proc:checker:1, proc:noise:2\nelevation = 5\nelevation = 7 9\n"
      "count = 12\n");
  EXPECT_EQ(kv.get_range("camera_distance"), (Range{2.5, 4}));
  EXPECT_EQ(kv.get_range("azimuth"), (Range{10, 20}));
  EXPECT_EQ(kv.get_range("elevation"), (Range{7, 9}));
  EXPECT_EQ(kv.get_int("count"), 12);
  const auto list = kv.get_list("texture_pool");
  ASSERT_TRUE(list.has_value());
  EXPECT_EQ(*list, (std::vector<std::string>{"proc:checker:1", "proc:noise:2"}));
  EXPECT_FALSE(kv.has("missing"));
  EXPECT_EQ(KeyValueConfig::parse("x = 3\n").get_range("x"), (Range{3, 3}));
}

TEST(KeyValueTest, MalformedLinesReportLineNumbers) {
  try {
    KeyValueConfig::parse("a = 1\nno equals sign\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(KeyValueConfig::parse("a = x\n").get_double("a"), Error);
  EXPECT_THROW(KeyValueConfig::parse("a = 1 2 3\n").get_range("a"), Error);
}

TEST(KeyValueTest, CanonicalTextSortedAndStable) {
  const auto a = KeyValueConfig::parse("b = 2\na = 1\n");
  const auto b = KeyValueConfig::parse("a=1\n\nb=   2\n");
  EXPECT_EQ(a.canonical_text(), b.canonical_text());
  EXPECT_LT(a.canonical_text().find("a = 1"), a.canonical_text().find("b = 2"));
}

TEST(TextureRefTest, ParsesAllKinds) {
  EXPECT_EQ(parse_texture_ref("proc:checker:12").kind, TextureRef::Kind::kChecker);
  EXPECT_EQ(parse_texture_ref("proc:noise:0").value, 0u);
  EXPECT_EQ(parse_texture_ref("proc:stripes:7").value, 7u);
  EXPECT_EQ(parse_texture_ref("solid:ff8000").value, 0xff8000u);
  EXPECT_EQ(parse_texture_ref("file:/tmp/a.png").path, "/tmp/a.png");
  for (const char* bad : {"proc:checker:", "proc:wood:1", "solid:12345", "solid:gg0000",
                          "file:", "checker:1", "", "proc:noise:-1"}) {
    EXPECT_THROW(parse_texture_ref(bad), InvalidArgument) << bad;
  }
}

TEST(NuisanceConfigTest, DefaultsValidate) {
  const NuisanceConfig cfg = default_nuisance_config();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.camera_distance, (Range{2, 6}));
  EXPECT_EQ(cfg.azimuth, (Range{0, 360}));
  EXPECT_EQ(cfg.elevation, (Range{0, 60}));
  EXPECT_FALSE(cfg.texture_pool.empty());
}

TEST(NuisanceConfigTest, RejectsInvalid) {
  const auto expect_invalid = [](auto mutate) {
    NuisanceConfig cfg = default_nuisance_config();
    mutate(cfg);
    EXPECT_THROW(cfg.validate(), InvalidArgument);
  };
  expect_invalid([](NuisanceConfig& c) { c.camera_distance = {5, 2}; });
  expect_invalid([](NuisanceConfig& c) { c.camera_distance = {0, 2}; });
  expect_invalid([](NuisanceConfig& c) { c.elevation = {0, 90}; });
  expect_invalid([](NuisanceConfig& c) { c.texture_pool.clear(); });
  expect_invalid([](NuisanceConfig& c) { c.texture_pool = {"bogus"}; });
  expect_invalid([](NuisanceConfig& c) { c.humanoid.height = {0.4, 1.8}; });
  expect_invalid([](NuisanceConfig& c) { c.humanoid.height = {1.5, 2.6}; });
  expect_invalid([](NuisanceConfig& c) { c.humanoid.limb_radius = {0, 0.05}; });
}

TEST(NuisanceConfigTest, FromKeyValue) {
  const auto kv = KeyValueConfig::parse(
      "camera_distance = 3 3\nazimuth = -15 15\nprocedural_textures = 4\n"
      "procedural_texture_offset = 10\nhumanoid_height = 1.6 1.8\n");
  const NuisanceConfig cfg = nuisance_config_from(kv, default_nuisance_config());
  EXPECT_EQ(cfg.camera_distance, (Range{3, 3}));
  EXPECT_EQ(cfg.azimuth, (Range{-15, 15}));
  EXPECT_EQ(cfg.humanoid.height, (Range{1.6, 1.8}));
  EXPECT_EQ(cfg.texture_pool, procedural_texture_pool(4, 10));
}

TEST(SampleNuisancesTest, AzimuthUniformity) {
  const NuisanceConfig cfg = default_nuisance_config();
  RngStream stream = derive_stream(123, 0);
  std::vector<double> az;
  for (int i = 0; i < 10000; ++i) az.push_back(sample_nuisances(cfg, stream).camera.azimuth);
  double mean = 0;
  for (double a : az) mean += a;
  mean /= az.size();
  const double se = 360.0 / std::sqrt(12.0) / std::sqrt(10000.0);
  EXPECT_LT(std::fabs(mean - 180.0), 3 * se);
  EXPECT_LT(testing::ks_uniform_statistic(az, 0, 360), testing::ks_critical_001(az.size()));
}

TEST(SampleNuisancesTest, PointRangeExact) {
  NuisanceConfig cfg = default_nuisance_config();
  cfg.camera_distance = {3, 3};
  for (std::uint64_t i = 0; i < 100; ++i) {
    RngStream stream = derive_stream(5, i);
    EXPECT_EQ(sample_nuisances(cfg, stream).camera.distance, 3.0);
  }
}

TEST(SampleNuisancesTest, DeterministicSerialization) {
  const NuisanceConfig cfg = default_nuisance_config();
  RngStream a = derive_stream(77, 3);
  RngStream b = derive_stream(77, 3);
  EXPECT_EQ(to_json(sample_nuisances(cfg, a)).dump(), to_json(sample_nuisances(cfg, b)).dump());
}

TEST(SampleNuisancesTest, JsonRoundTrip) {
  const NuisanceConfig cfg = default_nuisance_config();
  RngStream stream = derive_stream(78, 0);
  const NuisanceSample s = sample_nuisances(cfg, stream);
  EXPECT_EQ(nuisance_sample_from_json(nlohmann::json::parse(to_json(s).dump())), s);
}

TEST(SampleNuisancesTest, RangesRespectedOverRandomConfigs) {
  Pcg32 meta(90, 1);
  for (int c = 0; c < 50; ++c) {
    NuisanceConfig cfg = default_nuisance_config();
    const auto range = [&meta](double lo, double hi) {
      const double a = meta.uniform(lo, hi);
      const double b = meta.uniform(lo, hi);
      return Range{std::min(a, b), std::max(a, b)};
    };
    cfg.camera_distance = range(0.5, 10);
    cfg.azimuth = range(-360, 360);
    cfg.elevation = range(-80, 80);
    cfg.humanoid.height = range(0.6, 2.4);
    cfg.humanoid.arm_length_ratio = range(0.5, 1.5);
    cfg.humanoid.leg_length_ratio = range(0.5, 1.5);
    cfg.humanoid.torso_scale = range(0.5, 1.5);
    cfg.humanoid.limb_radius = range(0.01, 0.1);
    cfg.texture_pool = procedural_texture_pool(1 + static_cast<int>(meta.bounded(10)));
    cfg.validate();
    const std::set<std::string> pool(cfg.texture_pool.begin(), cfg.texture_pool.end());
    for (int i = 0; i < 20; ++i) {
      RngStream stream = derive_stream(c, i);
      const NuisanceSample s = sample_nuisances(cfg, stream);
      EXPECT_TRUE(cfg.camera_distance.contains(s.camera.distance));
      EXPECT_TRUE(cfg.azimuth.contains(s.camera.azimuth));
      EXPECT_TRUE(cfg.elevation.contains(s.camera.elevation));
      EXPECT_TRUE(pool.count(s.textures.sky) && pool.count(s.textures.floor) &&
                  pool.count(s.textures.body));
      EXPECT_TRUE(cfg.humanoid.height.contains(s.humanoid.height));
      EXPECT_NEAR(humanoid_topology(s.humanoid).height(), s.humanoid.height, 1e-6);
      for (std::size_t j = 1; j < s.humanoid.radii.size(); ++j) {
        EXPECT_GT(s.humanoid.radii[j], 0.0);
        EXPECT_GT(s.humanoid.length_multipliers[j], 0.0);
      }
    }
  }
}

TEST(SampleNuisancesTest, ScalarFactorsPairwiseUncorrelated) {
  NuisanceConfig cfg = default_nuisance_config();
  RngStream stream = derive_stream(2024, 0);
  std::vector<std::vector<double>> f(5);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < cfg.texture_pool.size(); ++i) index[cfg.texture_pool[i]] = static_cast<int>(i);
  for (int i = 0; i < 10000; ++i) {
    const NuisanceSample s = sample_nuisances(cfg, stream);
    f[0].push_back(s.camera.distance);
    f[1].push_back(s.camera.azimuth);
    f[2].push_back(s.camera.elevation);
    f[3].push_back(s.humanoid.height);
    f[4].push_back(index[s.textures.body]);
  }
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      EXPECT_LT(std::fabs(testing::pearson(f[a], f[b])), 0.05) << a << " vs " << b;
    }
  }
}

TEST(SampleHumanoidTest, DegenerateRangesReproduceScaledTemplate) {
  NuisanceConfig cfg = default_nuisance_config();
  cfg.humanoid.height = {1.7, 1.7};
  cfg.humanoid.arm_length_ratio = {1, 1};
  cfg.humanoid.leg_length_ratio = {1, 1};
  cfg.humanoid.torso_scale = {1, 1};
  RngStream stream = derive_stream(1, 1);
  const auto [shape, topo] = sample_humanoid(cfg, stream);
  const motion::SkeletonTopology& tmpl = motion::kinect25().topology;
  const motion::SkeletonTopology expected = tmpl.scaled(1.7 / tmpl.height());
  ASSERT_EQ(topo.size(), expected.size());
  for (std::size_t j = 0; j < topo.size(); ++j) {
    EXPECT_EQ(topo.joint(j).name, expected.joint(j).name);
    EXPECT_LT((topo.joint(j).rest_offset - expected.joint(j).rest_offset).norm(), 1e-12);
  }
}

TEST(SampleHumanoidTest, HeightMatchesFkRecomputation) {
  const NuisanceConfig cfg = default_nuisance_config();
  for (std::uint64_t i = 0; i < 50; ++i) {
    RngStream stream = derive_stream(3, i);
    const auto [shape, topo] = sample_humanoid(cfg, stream);
    const motion::JointPositions p = motion::forward_kinematics(topo, motion::rest_pose(topo));
    double lo = 0, hi = 0;
    for (const motion::Vec3& v : p) {
      lo = std::min(lo, v.y());
      hi = std::max(hi, v.y());
    }
    EXPECT_NEAR(hi - lo, shape.height, 1e-6);
  }
}

TEST(SampleHumanoidTest, DifferentStreamsGiveDifferentShapes) {
  const NuisanceConfig cfg = default_nuisance_config();
  HumanoidShape previous;
  for (std::uint64_t i = 0; i < 100; ++i) {
    RngStream stream = derive_stream(4, i);
    const HumanoidShape shape = sample_humanoid(cfg, stream).first;
    if (i > 0) {
      EXPECT_NE(shape, previous);
    }
    previous = shape;
  }
}

}  // namespace
}  // namespace rsa::randomize
