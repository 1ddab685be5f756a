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

#include <cmath>
#include <cstring>
#include <filesystem>

#include "rsa/common/error.h"
#include "rsa/genmodel/toy_model.h"
#include "rsa/learn/features.h"
#include "rsa/learn/model.h"
#include "rsa/learn/toy_fit.h"
#include "rsa/learn/train.h"
#include "rsa/learn/weights.h"
#include "support/gradient_check.h"
#include "support/test_support.h"

namespace rsa::learn {
namespace {

render::Image random_image(int w, int h, randomize::Pcg32& rng) {
  render::Image img(w, h, 3);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.bounded(256));
  return img;
}

TEST(Features, ConstantClipGivesZeros) {
  std::vector<render::Image> clip(16, render::Image(64, 48, 3));
  for (auto& img : clip) std::fill(img.pixels.begin(), img.pixels.end(), 90);
  const FeatureVector f = extract_features(clip, FeatureConfig{});
  ASSERT_EQ(f.size(), 1536u);
  for (double v : f) EXPECT_EQ(v, 0.0);
}

TEST(Features, FrameIndices) {
  FeatureConfig cfg;
  EXPECT_EQ(feature_frame_indices(32, cfg), (std::vector<int>{0, 4, 8, 12, 16, 20, 24, 28}));
  cfg.frames = 4;
  EXPECT_EQ(feature_frame_indices(10, cfg), (std::vector<int>{0, 2, 5, 7}));
  EXPECT_THROW(feature_frame_indices(3, cfg), InvalidArgument);
}

TEST(Features, MatchesBlockAverageOracle) {
  randomize::Pcg32 rng(5, 1);
  FeatureConfig cfg{3, 5, 7};
  std::vector<render::Image> frames;
  for (int i = 0; i < 3; ++i) frames.push_back(random_image(37, 29, rng));
  const FeatureVector f = features_from_frames(frames, cfg);

  // Independent per-pixel loop: a pixel at (x, y) belongs to block
  // (y * rows / H, x * cols / W) under floor partitioning.
  std::vector<double> sum(cfg.dimension(), 0.0);
  std::vector<double> count(cfg.dimension(), 0.0);
  for (int t = 0; t < 3; ++t) {
    for (int y = 0; y < 29; ++y) {
      for (int x = 0; x < 37; ++x) {
        int r = 0;
        while ((r + 1) * 29 / 5 <= y) ++r;
        int c = 0;
        while ((c + 1) * 37 / 7 <= x) ++c;
        const std::uint8_t* p = frames[t].row(y) + 3 * x;
        const std::size_t k = static_cast<std::size_t>((t * 5 + r) * 7 + c);
        sum[k] += 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
        count[k] += 1.0;
      }
    }
  }
  double mean = 0.0;
  for (std::size_t k = 0; k < sum.size(); ++k) {
    sum[k] /= count[k];
    mean += sum[k];
  }
  mean /= static_cast<double>(sum.size());
  double var = 0.0;
  for (double v : sum) var += (v - mean) * (v - mean);
  var /= static_cast<double>(sum.size());
  // The fixed-point luma weights differ from the real-valued ones by < 0.3%.
  double m = 0.0, v2 = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    EXPECT_NEAR(f[k], (sum[k] - mean) / std::sqrt(var), 0.05) << k;
    m += f[k];
    v2 += f[k] * f[k];
  }
  EXPECT_NEAR(m / f.size(), 0.0, 1e-9);
  EXPECT_NEAR(v2 / f.size(), 1.0, 1e-9);
}

TEST(Features, RejectsWrongFrameCount) {
  randomize::Pcg32 rng(1, 1);
  std::vector<render::Image> frames{random_image(32, 24, rng)};
  EXPECT_THROW(features_from_frames(frames, FeatureConfig{}), InvalidArgument);
}

TEST(Network, ZeroWeightsGiveUniformProbabilities) {
  randomize::Pcg32 rng(2, 2);
  ClassifierModel m = make_classifier(5, {"a", "b", "c", "d"}, ModelShape{}, rng);
  std::fill(m.trunk.params.begin(), m.trunk.params.end(), 0.0);
  std::fill(m.head.params.begin(), m.head.params.end(), 0.0);
  const std::vector<double> x{1, -2, 3, 0.5, 7};
  for (double p : classifier_forward(m, x).probabilities) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Network, ProbabilitiesSumToOne) {
  randomize::Pcg32 rng(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    ClassifierModel m = make_classifier(6, {"a", "b", "c"}, ModelShape{8, 4, 4, 4}, rng);
    for (double& w : m.head.params) w *= 10.0;
    std::vector<double> x(6);
    for (double& v : x) v = rng.uniform(-5, 5);
    double s = 0.0;
    for (double p : classifier_forward(m, x).probabilities) {
      EXPECT_GE(p, 0.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(Network, GoldenTwoTwoTwo) {
  Mlp net({2, 2, 2}, false);
  // Layer 0: W = [[0.5, -1], [2, 0.25]], b = [0.1, -0.2].
  // Layer 1: W = [[1, -1], [0.5, 3]],    b = [0, 0.3].
  net.params = {0.5, -1, 2, 0.25, 0.1, -0.2, 1, -1, 0.5, 3, 0, 0.3};
  Mlp::Trace t;
  net.forward(std::vector<double>{0.4, -0.6}, t);
  const double h0 = std::tanh(0.5 * 0.4 - 1 * -0.6 + 0.1);
  const double h1 = std::tanh(2 * 0.4 + 0.25 * -0.6 - 0.2);
  EXPECT_NEAR(t.values.back()[0], h0 - h1, 1e-15);
  EXPECT_NEAR(t.values.back()[1], 0.5 * h0 + 3 * h1 + 0.3, 1e-15);
}

TEST(Network, InputSizeMismatch) {
  Mlp net({3, 2}, false);
  Mlp::Trace t;
  EXPECT_THROW(net.forward(std::vector<double>{1, 2}, t), InvalidArgument);
}

// One-dimensional model: z = tanh(w x + b), logits = (u0 z + c0, u1 z + c1),
// D(z) = sigmoid(v z + e).
struct TinyModel {
  ClassifierModel model;
  DiscriminatorModel d;
};

TinyModel tiny_model(double w, double b, double v, double e) {
  TinyModel t;
  t.model.trunk = Mlp({1, 1}, true);
  t.model.trunk.params = {w, b};
  t.model.head = Mlp({1, 2}, false);
  t.model.head.params = {1.5, -0.5, 0.2, -0.1};
  t.model.classes = {"p", "q"};
  t.d.net = Mlp({1, 1}, false);
  t.d.net.params = {v, e};
  return t;
}

DomainDataset single(const char* domain, double x, int label) {
  DomainDataset ds;
  ds.domain = domain;
  ds.classes = {"p", "q"};
  ds.features = {{x}};
  ds.labels = {label};
  return ds;
}

TEST(Losses, ConstantHalfDiscriminator) {
  const TinyModel t = tiny_model(0.7, 0.1, 0.0, 0.0);
  const DomainDataset s = single("synthetic", 1.0, 0);
  const DomainDataset r = single("real", -1.0, 1);
  const Losses l = adversarial_losses(t.model, t.d, Batch{&s, {0}}, Batch{&r, {0}});
  EXPECT_NEAR(l.adv, -1.3863, 1e-4);
  EXPECT_NEAR(l.adv, 2.0 * std::log(0.5), 1e-12);
}

TEST(Losses, PerfectDiscriminatorLimit) {
  const DomainDataset s = single("synthetic", -3.0, 0);
  const DomainDataset r = single("real", 3.0, 1);
  double prev = -1e300;
  for (double v : {0.5, 2.0, 8.0, 32.0, 128.0}) {
    const TinyModel t = tiny_model(1.0, 0.0, v, 0.0);
    const double adv = adversarial_losses(t.model, t.d, Batch{&s, {0}}, Batch{&r, {0}}).adv;
    EXPECT_LT(adv, 0.0);
    EXPECT_GE(adv, prev);  // equal once both terms hit the clamp
    prev = adv;
  }
  EXPECT_GT(prev, -1e-6);
}

TEST(Losses, OneExampleHandComputation) {
  const TinyModel t = tiny_model(0.8, -0.3, 1.7, 0.4);
  const DomainDataset s = single("synthetic", 0.9, 0);
  const DomainDataset r = single("real", -0.4, 1);
  const Losses l = adversarial_losses(t.model, t.d, Batch{&s, {0}}, Batch{&r, {0}});

  const auto sigmoid = [](double a) { return 1.0 / (1.0 + std::exp(-a)); };
  const auto ce = [](double z, int label) {
    const double l0 = 1.5 * z + 0.2;
    const double l1 = -0.5 * z - 0.1;
    const double mx = std::max(l0, l1);
    const double lse = mx + std::log(std::exp(l0 - mx) + std::exp(l1 - mx));
    return lse - (label == 0 ? l0 : l1);
  };
  const double zs = std::tanh(0.8 * 0.9 - 0.3);
  const double zt = std::tanh(0.8 * -0.4 - 0.3);
  EXPECT_NEAR(l.cls, 0.5 * (ce(zs, 0) + ce(zt, 1)), 1e-14);
  EXPECT_NEAR(l.adv, std::log(sigmoid(1.7 * zt + 0.4)) + std::log(1.0 - sigmoid(1.7 * zs + 0.4)),
              1e-14);
}

TEST(Gradient, MatchesFiniteDifferences) {
  const double lambdas[] = {0.0, 0.1, 1.0};
  for (int config = 0; config < 10; ++config) {
    const double lambda = lambdas[config % 3];
    testing::GradientFixture f = testing::make_gradient_fixture(
        100 + config, 3 + config % 4, 2 + config % 3, 3 + config % 2, 2 + config % 3);
    Batch s{&f.source, {}};
    Batch t{&f.target, {}};
    for (std::size_t i = 0; i < f.source.size(); ++i) s.indices.push_back(i);
    for (std::size_t i = 0; i < f.target.size(); ++i) t.indices.push_back(i);
    const testing::GradientCheck g =
        testing::check_objective_gradient(f.model, f.discriminator, s, t, lambda);
    EXPECT_LT(g.max_relative_error, 1e-4) << "config " << config << " lambda " << lambda;
    EXPECT_EQ(g.parameters, f.model.trunk.params.size() + f.model.head.params.size() +
                                f.discriminator.net.params.size());
  }
}

TEST(Alternating, DiscriminatorPhaseAscends) {
  for (int seed = 0; seed < 5; ++seed) {
    testing::GradientFixture f = testing::make_gradient_fixture(200 + seed, 4, 3, 6, 6);
    Batch s{&f.source, {0, 1, 2, 3, 4, 5}};
    Batch t{&f.target, {0, 1, 2, 3, 4, 5}};
    TrainConfig cfg;
    cfg.strategy = Strategy::kAdversarial;
    cfg.discriminator_learning_rate = 1e-3;
    const StepLog log = alternating_step(f.model, f.discriminator, s, t, cfg);
    EXPECT_GT(log.after_discriminator.adv, log.before.adv);
    EXPECT_NEAR(log.after_discriminator.cls, log.before.cls, 1e-12);
  }
}

struct TwoDomains {
  DomainDataset synthetic;
  DomainDataset real;
};

// Three linearly separable classes along distinct feature directions.
TwoDomains separable(std::uint64_t seed, std::size_t n_syn, std::size_t n_real) {
  randomize::Pcg32 rng(seed, 4);
  TwoDomains out;
  const auto fill = [&](DomainDataset& ds, const char* domain, std::size_t n, double shift) {
    ds.domain = domain;
    ds.classes = {"x", "y", "z"};
    for (std::size_t i = 0; i < n; ++i) {
      const int label = static_cast<int>(i % 3);
      FeatureVector f(6);
      for (double& v : f) v = rng.uniform(-0.3, 0.3) + shift;
      f[static_cast<std::size_t>(label)] += 2.0;
      ds.features.push_back(f);
      ds.labels.push_back(label);
    }
  };
  fill(out.synthetic, "synthetic", n_syn, 0.5);
  fill(out.real, "real", n_real, 0.0);
  return out;
}

TrainConfig small_config(Strategy s) {
  TrainConfig c;
  c.strategy = s;
  c.shape = ModelShape{8, 4, 6, 4};
  c.epochs = 3;
  c.finetune_epochs = 2;
  c.batch_size = 8;
  c.seed = 17;
  return c;
}

TEST(Train, ZeroLambdaMatchesJointBitwise) {
  const TwoDomains data = separable(1, 40, 25);
  TrainConfig joint = small_config(Strategy::kJoint);
  TrainConfig adv = small_config(Strategy::kAdversarial);
  adv.lambda_adv = 0.0;
  for (int epochs : {0, 1, 2, 4}) {
    joint.epochs = adv.epochs = epochs;
    const TrainedModel a = train(joint, {&data.synthetic, &data.real});
    const TrainedModel b = train(adv, {&data.synthetic, &data.real});
    ASSERT_EQ(a.classifier.trunk.params.size(), b.classifier.trunk.params.size());
    EXPECT_EQ(0, std::memcmp(a.classifier.trunk.params.data(), b.classifier.trunk.params.data(),
                             a.classifier.trunk.params.size() * sizeof(double)));
    EXPECT_EQ(0, std::memcmp(a.classifier.head.params.data(), b.classifier.head.params.data(),
                             a.classifier.head.params.size() * sizeof(double)));
  }
}

double full_loss(const ClassifierModel& m, const DomainDataset& ds) {
  Batch b{&ds, {}};
  for (std::size_t i = 0; i < ds.size(); ++i) b.indices.push_back(i);
  return classification_loss(m, std::span<const Batch>(&b, 1));
}

TEST(Train, CrossEntropyNonnegativeAndDecreasesOverFirstEpoch) {
  const TwoDomains data = separable(2, 30, 60);
  for (Strategy s : {Strategy::kRealOnly, Strategy::kSyntheticOnly, Strategy::kJoint,
                     Strategy::kFinetune, Strategy::kAdversarial}) {
    TrainConfig c = small_config(s);
    c.epochs = 0;
    c.finetune_epochs = 0;
    const double before = full_loss(train(c, {&data.synthetic, &data.real}).classifier, data.real);
    c.epochs = 1;
    const TrainedModel after = train(c, {&data.synthetic, &data.real});
    EXPECT_LT(full_loss(after.classifier, data.real), before) << strategy_name(s);
    for (const LossRecord& r : after.curve) EXPECT_GE(r.cls, 0.0);
  }
}

TEST(Train, DeterministicInSeed) {
  const TwoDomains data = separable(3, 30, 30);
  for (Strategy s : {Strategy::kFinetune, Strategy::kAdversarial}) {
    const TrainConfig c = small_config(s);
    const TrainedModel a = train(c, {&data.synthetic, &data.real});
    const TrainedModel b = train(c, {&data.synthetic, &data.real});
    EXPECT_EQ(encode_weights(a.classifier), encode_weights(b.classifier));
    EXPECT_EQ(loss_curve_csv(a.curve), loss_curve_csv(b.curve));
    TrainConfig other = c;
    other.seed = 18;
    EXPECT_NE(encode_weights(train(other, {&data.synthetic, &data.real}).classifier),
              encode_weights(a.classifier));
  }
}

TEST(Train, RealOnlyIgnoresSyntheticContents) {
  const TwoDomains data = separable(4, 30, 30);
  const TwoDomains other = separable(5, 90, 30);
  const TrainConfig c = small_config(Strategy::kRealOnly);
  const TrainedModel a = train(c, {&data.synthetic, &data.real});
  const TrainedModel b = train(c, {&other.synthetic, &data.real});
  const TrainedModel none = train(c, {nullptr, &data.real});
  EXPECT_EQ(loss_curve_csv(a.curve), loss_curve_csv(b.curve));
  EXPECT_EQ(loss_curve_csv(a.curve), loss_curve_csv(none.curve));
}

TEST(Train, FinetuneDefaultsAndMissingData) {
  TrainConfig c;
  EXPECT_DOUBLE_EQ(c.finetune_learning_rate, c.learning_rate / 10.0);
  EXPECT_DOUBLE_EQ(default_finetune_rate(0.3), 0.03);
  const TwoDomains data = separable(6, 12, 12);
  EXPECT_THROW(train(small_config(Strategy::kFinetune), {nullptr, &data.real}), InvalidArgument);
  EXPECT_THROW(train(small_config(Strategy::kAdversarial), {&data.synthetic, nullptr}),
               InvalidArgument);
  EXPECT_THROW(train(small_config(Strategy::kRealOnly), {&data.synthetic, nullptr}),
               InvalidArgument);
  c.finetune_learning_rate = c.learning_rate;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Train, PhasesAndCsv) {
  const TwoDomains data = separable(7, 16, 16);
  const TrainedModel f = train(small_config(Strategy::kFinetune), {&data.synthetic, &data.real});
  ASSERT_FALSE(f.curve.empty());
  EXPECT_EQ(f.curve.front().phase, "pretrain");
  EXPECT_EQ(f.curve.back().phase, "finetune");
  const TrainedModel a =
      train(small_config(Strategy::kAdversarial), {&data.synthetic, &data.real});
  ASSERT_GE(a.curve.size(), 2u);
  EXPECT_EQ(a.curve[0].phase, "discriminator");
  EXPECT_EQ(a.curve[1].phase, "model");
  EXPECT_TRUE(a.curve[0].adv.has_value());
  const std::string csv = loss_curve_csv(f.curve);
  EXPECT_EQ(csv.rfind("step,phase,L_cls,L_adv\n", 0), 0u);
  const std::string line = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) -
                                                              csv.find('\n') - 1);
  EXPECT_EQ(line.substr(0, 11), "0,pretrain,");
  EXPECT_EQ(line.back(), ',');
  const std::string adv_csv = loss_curve_csv(a.curve);
  EXPECT_NE(adv_csv.find(",discriminator,"), std::string::npos);
}

TEST(Weights, RoundTrip) {
  randomize::Pcg32 rng(9, 9);
  const ClassifierModel m = make_classifier(7, {"wave", "bow", "kick"}, ModelShape{5, 3, 4, 4},
                                            rng);
  const std::vector<std::uint8_t> bytes = encode_weights(m);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "RSAW");
  const ClassifierModel back = decode_weights(bytes);
  EXPECT_EQ(back.classes, m.classes);
  EXPECT_EQ(back.trunk.params, m.trunk.params);
  EXPECT_EQ(back.head.params, m.head.params);
  EXPECT_EQ(back.trunk.widths(), m.trunk.widths());

  std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 3);
  EXPECT_THROW(decode_weights(cut), ParseError);
  std::vector<std::uint8_t> extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(decode_weights(extra), ParseError);
  std::vector<std::uint8_t> magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_weights(magic), ParseError);

  const std::filesystem::path dir = testing::scratch_dir("weights");
  save_weights(dir / "w.bin", m);
  EXPECT_EQ(encode_weights(load_weights(dir / "w.bin")), bytes);
  EXPECT_THROW(load_weights(dir / "missing.bin"), IoError);
}

TEST(Toy, EmbeddingIsStandardized) {
  for (int k : {2, 3, 6}) {
    for (int x = 0; x < k; ++x) {
      const FeatureVector f = toy_embedding(x, k);
      double m = 0.0, v = 0.0;
      for (double e : f) m += e;
      for (double e : f) v += e * e;
      EXPECT_NEAR(m / k, 0.0, 1e-12);
      EXPECT_NEAR(v / k, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(toy_embedding(3, 3), InvalidArgument);
}

// The trained classifier reaches the empirical posterior of its training
// sample, and with enough data that sample is close to the exact posterior.
TEST(Toy, ClassifierApproachesExactPosterior) {
  for (int trial = 0; trial < 1; ++trial) {
    randomize::Pcg32 rng(300 + trial, 5);
    genmodel::ToyShape shape;
    shape.observations = 3;
    const genmodel::ToyGenerativeModel model = genmodel::random_toy_model(shape, rng);
    const std::vector<genmodel::ToyDraw> draws = genmodel::sample_toy(model, 20000, rng);
    ToyFitConfig cfg;
    cfg.seed = trial;
    const ToyFit fit = fit_toy_classifier(model, draws, cfg);
    for (int x = 0; x < 3; ++x) {
      EXPECT_LT(l1_distance(fit.posterior[x], fit.empirical[x]), 0.01) << x;
      EXPECT_LT(l1_distance(fit.posterior[x], genmodel::exact_posterior(model, x)), 0.05) << x;
    }
  }
}

}  // namespace
}  // namespace rsa::learn
