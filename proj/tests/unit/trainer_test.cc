// Copyright 2026 The FreqGuard Authors.
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

#include "freqguard/data.h"
#include "freqguard/trainer.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "freqguard/io.h"
#include "freqguard/transforms.h"
#include "test_util.h"

namespace freqguard {
namespace {

namespace fs = std::filesystem;

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (double& v : m.values()) v = g(rng);
  return m;
}

// NT-Xent straight from the definition: cosine similarities, log of the
// softmax denominator without any stabilisation.
double reference_ntxent(const Matrix& a, const Matrix& b, double tau) {
  const std::size_t n = a.rows();
  std::vector<std::vector<double>> z;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const auto row = i < n ? a.row(i) : b.row(i - n);
    z.emplace_back(row.begin(), row.end());
  }
  auto cosine = [](const std::vector<double>& x, const std::vector<double>& y) {
    double xy = 0, xx = 0, yy = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      xy += x[j] * y[j];
      xx += x[j] * x[j];
      yy += y[j] * y[j];
    }
    return xy / std::sqrt(xx * yy);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const std::size_t pos = i < n ? i + n : i - n;
    double denom = 0.0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (k != i) denom += std::exp(cosine(z[i], z[k]) / tau);
    }
    total += -std::log(std::exp(cosine(z[i], z[pos]) / tau) / denom);
  }
  return total / static_cast<double>(2 * n);
}

TEST(NtXentTest, LossMatchesReference) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t d = 2 + rng() % 5;
    const Matrix a = random_matrix(n, d, rng), b = random_matrix(n, d, rng);
    EXPECT_NEAR(ntxent_loss(a, b, 0.5).loss, reference_ntxent(a, b, 0.5), 1e-12);
  }
}

TEST(NtXentTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng() % 4;
    const std::size_t d = 2 + rng() % 4;
    const double tau = 0.2 + 0.1 * t;
    Matrix a = random_matrix(n, d, rng), b = random_matrix(n, d, rng);
    const NtXentResult r = ntxent_loss(a, b, tau);
    const double h = 1e-5;
    double worst = 0.0, scale = 0.0;
    for (Matrix* m : {&a, &b}) {
      const Matrix& g = m == &a ? r.grad_a : r.grad_b;
      for (std::size_t i = 0; i < m->size(); ++i) {
        const double keep = m->values()[i];
        m->values()[i] = keep + h;
        const double up = reference_ntxent(a, b, tau);
        m->values()[i] = keep - h;
        const double down = reference_ntxent(a, b, tau);
        m->values()[i] = keep;
        const double fd = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(fd - g.values()[i]));
        scale = std::max(scale, std::abs(fd));
      }
    }
    EXPECT_LT(worst / scale, 1e-6);
  }
}

TEST(NtXentTest, SinglePairHasZeroLossAndGradient) {
  std::mt19937_64 rng(3);
  const NtXentResult r = ntxent_loss(random_matrix(1, 4, rng), random_matrix(1, 4, rng), 0.5);
  EXPECT_NEAR(r.loss, 0.0, 1e-15);
  for (double v : r.grad_a.values()) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(NtXentTest, GradientIsOrthogonalToEmbeddings) {
  // The loss only sees directions, so scaling a row cannot change it.
  std::mt19937_64 rng(4);
  const Matrix a = random_matrix(3, 5, rng), b = random_matrix(3, 5, rng);
  const NtXentResult r = ntxent_loss(a, b, 0.5);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(dot(a.row(i), r.grad_a.row(i)), 0.0, 1e-12);
}

TEST(NtXentTest, Errors) {
  std::mt19937_64 rng(5);
  Matrix a = random_matrix(2, 3, rng);
  const Matrix b = random_matrix(2, 3, rng);
  EXPECT_THROW(ntxent_loss(a, random_matrix(3, 3, rng), 0.5), Error);
  EXPECT_THROW(ntxent_loss(a, b, 0.0), Error);
  for (double& v : a.row(1)) v = 0.0;
  try {
    ntxent_loss(a, b, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
}

template <typename Encoder>
void check_encoder_gradient(const Encoder& enc, std::size_t din, std::mt19937_64& rng) {
  const EncoderParams params = enc;
  std::normal_distribution<double> g;
  std::vector<double> x(din);
  for (double& v : x) v = g(rng);
  std::vector<double> upstream(output_dim(params));
  for (double& v : upstream) v = g(rng);
  EncoderParams grad = zeros_like(params);
  accumulate_gradient(params, x, upstream, grad);

  auto objective = [&](const EncoderParams& p) {
    const auto y = encode(p, x);
    return dot(y, upstream);
  };
  EncoderParams probe = params;
  auto spans = parameter_spans(probe);
  const auto grads = parameter_spans(std::as_const(grad));
  const double h = 1e-6;
  for (std::size_t t = 0; t < spans.size(); ++t) {
    for (std::size_t i = 0; i < spans[t].size(); ++i) {
      const double keep = spans[t][i];
      spans[t][i] = keep + h;
      const double up = objective(probe);
      spans[t][i] = keep - h;
      const double down = objective(probe);
      spans[t][i] = keep;
      EXPECT_NEAR(grads[t][i], (up - down) / (2 * h), 1e-6);
    }
  }
}

TEST(EncoderTest, LinearAndMlpGradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(6);
  check_encoder_gradient(init_linear(5, 3, 1), 5, rng);
  check_encoder_gradient(init_mlp(5, 7, 3, 2), 5, rng);
}

TEST(EncoderTest, InitIsSeededAndBounded) {
  const LinearEncoder a = init_linear(16, 4, 7);
  EXPECT_EQ(a, init_linear(16, 4, 7));
  EXPECT_NE(a, init_linear(16, 4, 8));
  for (double v : a.weight.values()) EXPECT_LE(std::abs(v), 0.25);
  const MlpEncoder m = init_mlp(9, 4, 2, 1);
  EXPECT_EQ(input_dim(m), 9u);
  EXPECT_EQ(output_dim(m), 2u);
  EXPECT_THROW(encode(EncoderParams{a}, std::vector<double>(15)), Error);
}

TEST(SgdTest, HandComputedMomentumAndDecay) {
  EncoderParams p = LinearEncoder{Matrix(1, 1, 1.0)};
  const EncoderParams g = LinearEncoder{Matrix(1, 1, 0.5)};
  SgdMomentum opt(0.1, 0.9, 0.1);
  opt.step(p, g);
  EXPECT_NEAR(std::get<LinearEncoder>(p).weight(0, 0), 0.94, 1e-14);
  opt.step(p, g);
  EXPECT_NEAR(std::get<LinearEncoder>(p).weight(0, 0), 0.8266, 1e-14);
}

Dataset tiny_dataset() {
  Dataset ds;
  ds.num_classes = 2;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 12; ++i) {
    ds.images.push_back(testing::random_image(8, 8, rng));
    ds.labels.push_back(static_cast<std::size_t>(i % 2));
  }
  return ds;
}

TrainConfig tiny_config() {
  TrainConfig c;
  c.epochs = 3;
  c.batch_size = 5;  // 12 = 5 + 5 + 2
  c.embedding_dim = 8;
  c.seed = 3;
  return c;
}

TEST(TrainTest, DeterministicAndTraced) {
  const Dataset ds = tiny_dataset();
  AugmentConfig aug;
  aug.freq_patch.side_max = 3;
  const TrainResult a = train_encoder(ds, aug, tiny_config());
  const TrainResult b = train_encoder(ds, aug, tiny_config());
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.loss_trace, b.loss_trace);
  ASSERT_EQ(a.loss_trace.size(), 3u);
  for (double l : a.loss_trace) EXPECT_TRUE(std::isfinite(l));
  TrainConfig other = tiny_config();
  other.seed = 4;
  EXPECT_NE(train_encoder(ds, aug, other).params, a.params);
}

TEST(TrainTest, ZeroEpochsReturnsInitialEncoder) {
  TrainConfig c = tiny_config();
  c.epochs = 0;
  const TrainResult r = train_encoder(tiny_dataset(), AugmentConfig{}, c);
  EXPECT_EQ(r.params, init_encoder(c, 192));
  EXPECT_TRUE(r.loss_trace.empty());
}

TEST(TrainTest, LossDecreasesOnIdentityViews) {
  TrainConfig c = tiny_config();
  c.epochs = 40;
  c.batch_size = 12;  // full batch, so epochs see the same negatives
  c.learning_rate = 1e-3;
  c.momentum = 0.0;
  const TrainResult r = train_encoder(tiny_dataset(), AugmentConfig::identity(), c);
  for (std::size_t e = 1; e < r.loss_trace.size(); ++e) {
    EXPECT_LE(r.loss_trace[e], r.loss_trace[e - 1] + 1e-9) << "epoch " << e;
  }
  EXPECT_LT(r.loss_trace.back(), r.loss_trace.front() - 0.05);
}

TEST(TrainTest, LossDecreasesOnSyntheticDataWithDefaults) {
  TrainConfig c;
  c.epochs = 5;
  const TrainResult r = train_encoder(gen_synthetic(3, 100, 16, 0), AugmentConfig{}, c);
  ASSERT_EQ(r.loss_trace.size(), 5u);
  EXPECT_LT(r.loss_trace.back(), r.loss_trace.front());
}

TEST(TrainTest, DivergenceNamesTheEpoch) {
  TrainConfig c = tiny_config();
  c.learning_rate = 1e300;
  try {
    train_encoder(tiny_dataset(), AugmentConfig::identity(), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTraining);
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos);
  }
}

TEST(TrainTest, InvarianceTermPullsBlurredEmbeddingsTogether) {
  const Dataset ds = tiny_dataset();
  AugmentConfig aug = AugmentConfig::identity();
  aug.blur = {0.0, 1.0, 1.0};
  aug.freq_patch = {0.0, 1, 2};
  TrainConfig plain = tiny_config();
  plain.epochs = 20;
  TrainConfig inv = plain;
  inv.c_equi = 1.0;
  auto gap = [&](const EncoderParams& p) {
    double total = 0.0;
    for (const Image& x : ds.images) {
      const auto fx = encode(p, flatten(x));
      const auto fb = encode(p, flatten(gaussian_blur(x, 1.0, 7)));
      total += squared_distance(fx, fb) / squared_norm(std::span<const double>(fx));
    }
    return total;
  };
  EXPECT_LT(gap(train_encoder(ds, aug, inv).params), gap(train_encoder(ds, aug, plain).params));
}

TEST(TrainTest, ConfigValidation) {
  TrainConfig c = tiny_config();
  c.batch_size = 1;
  EXPECT_THROW(train_encoder(tiny_dataset(), AugmentConfig{}, c), Error);
  c = tiny_config();
  c.batch_size = 13;
  EXPECT_THROW(train_encoder(tiny_dataset(), AugmentConfig{}, c), Error);
  c = tiny_config();
  c.momentum = 1.0;
  EXPECT_THROW(validate(c), Error);
}

TEST(EquiTest, IdentityEncoderIsFlipEquivariant) {
  const std::size_t side = 4;
  Matrix eye(3 * side * side, 3 * side * side);
  for (std::size_t i = 0; i < eye.rows(); ++i) eye(i, i) = 1.0;
  const EncoderParams identity = LinearEncoder{eye};
  const std::vector<PairedTransform> flips = {
      spatial_transform("flip", side, side, horizontal_flip, horizontal_flip)};
  std::mt19937_64 rng(10);
  const Image x = testing::random_image(side, side, rng);
  EXPECT_NEAR(equi_loss(identity, x, flips, EquiForm::kForward), 0.0, 1e-24);
  EXPECT_NEAR(equi_loss(identity, x, flips, EquiForm::kInverse), 0.0, 1e-24);
  // Invariance to the flip fails for the identity encoder by |x - flip x|^2.
  const double want = squared_distance(flatten(x), flatten(horizontal_flip(x)));
  EXPECT_NEAR(aug_invariance_loss(identity, x, flips), want, 1e-12);
  EXPECT_NEAR(aug_loss(identity, x, flips, flips), want, 1e-12);
}

TEST(EquiTest, MissingActionsAreContractErrors) {
  const EncoderParams enc = init_linear(48, 48, 1);
  const Image x(4, 4);
  const std::vector<PairedTransform> inv = {invariance_transform("flip", horizontal_flip)};
  EXPECT_THROW(equi_loss(enc, x, inv, EquiForm::kForward), Error);
  const std::vector<PairedTransform> fwd_only = {spatial_transform("flip", 4, 4, horizontal_flip)};
  EXPECT_NO_THROW(equi_loss(enc, x, fwd_only, EquiForm::kForward));
  EXPECT_THROW(equi_loss(enc, x, fwd_only, EquiForm::kInverse), Error);
  // Output dimension 8 is not an image of 4x4: no spatial action exists.
  const EncoderParams small = init_linear(48, 8, 1);
  EXPECT_THROW(equi_loss(small, x, fwd_only, EquiForm::kForward), Error);
  EXPECT_EQ(equi_loss(enc, x, {}, EquiForm::kForward), 0.0);
}

TEST(EmbedTest, UnitNormLumaAndPoisonFlags) {
  const Dataset ds = tiny_dataset();
  const EncoderParams enc = init_linear(192, 6, 2);
  PoisonManifest m;
  m.poisoned_indices = {1, 4};
  const EmbeddingSet set = embed_dataset(enc, ds, InferenceTransform::kLuma, m);
  EXPECT_TRUE(set.unit_norm);
  EXPECT_TRUE(set.poisoned[1]);
  EXPECT_TRUE(set.poisoned[4]);
  EXPECT_FALSE(set.poisoned[0]);
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_NEAR(squared_norm(set.vectors.row(i)), 1.0, 1e-12);
    auto want = encode(enc, flatten(luma_view(ds.images[i])));
    const double n = std::sqrt(squared_norm(std::span<const double>(want)));
    for (std::size_t j = 0; j < want.size(); ++j) EXPECT_NEAR(set.vectors(i, j), want[j] / n, 1e-12);
  }
}

TEST(EncoderIoTest, RoundTripLinearAndMlp) {
  const fs::path dir = fs::temp_directory_path() / "freqguard_encoder_io_test";
  fs::remove_all(dir);
  for (const EncoderParams& p : {EncoderParams{init_linear(6, 3, 1)},
                                 EncoderParams{init_mlp(6, 4, 3, 2)}}) {
    export_encoder(p, dir);
    EXPECT_EQ(import_encoder(dir), p);
  }
  const std::string bytes = read_file(dir / "encoder.f64");
  write_file_atomic(dir / "encoder.f64", bytes.substr(0, bytes.size() - 8));
  try {
    import_encoder(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace freqguard
