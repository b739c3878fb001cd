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

#include "freqguard/defenses.h"

#include <gtest/gtest.h>

#include "freqguard/attacks.h"
#include "freqguard/seed.h"
#include "freqguard/transforms.h"
#include "test_util.h"

namespace freqguard {
namespace {

using testing::random_image;

TEST(AugmentConfigTest, IdentityDisablesEverything) {
  std::mt19937_64 rng(1);
  const Image x = random_image(8, 8, rng);
  const AugmentConfig id = AugmentConfig::identity();
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(compose_view(x, id, seed), x);
}

TEST(AugmentConfigTest, ValidationRejectsBadRanges) {
  AugmentConfig c;
  EXPECT_NO_THROW(validate(c, 16));
  c.flip_probability = 1.5;
  EXPECT_THROW(validate(c, 16), Error);
  c = AugmentConfig{};
  c.blur.sigma_min = 2.0;
  c.blur.sigma_max = 1.0;
  EXPECT_THROW(validate(c, 16), Error);
  c = AugmentConfig{};
  c.freq_patch.side_max = 16;
  EXPECT_THROW(validate(c, 16), Error);
  c = AugmentConfig{};
  c.crop.scale_min = 0.0;
  EXPECT_THROW(validate(c, 16), Error);
}

TEST(BlurTest, DrawIsSeededAndWithinRange) {
  BlurConfig cfg{0.5, 0.3, 1.5};
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const BlurDraw d = draw_blur(cfg, seed);
    EXPECT_EQ(d.applied, draw_blur(cfg, seed).applied);
    if (d.applied) {
      ++applied;
      EXPECT_GE(d.sigma, 0.3);
      EXPECT_LE(d.sigma, 1.5);
    }
  }
  EXPECT_NEAR(applied / 400.0, 0.5, 0.1);
  EXPECT_FALSE(draw_blur({0.0, 0.3, 1.5}, 3).applied);
  EXPECT_TRUE(draw_blur({1.0, 0.3, 1.5}, 3).applied);
}

TEST(BlurTest, KernelSizeIsCappedToImage) {
  EXPECT_EQ(blur_kernel_size({1.0, 0.1, 1.5}, 32), 9u);
  EXPECT_EQ(blur_kernel_size({1.0, 0.1, 3.0}, 16), 15u);
  EXPECT_EQ(blur_kernel_size({1.0, 0.1, 3.0}, 9), 9u);
}

TEST(BlurTest, PreservesConstantImagesAndMean) {
  const Image flat(8, 8, Colorspace::kRgb, 0.4);
  EXPECT_LT(max_abs_diff(gaussian_blur(flat, 1.0, 7), flat), 1e-12);
  std::mt19937_64 rng(2);
  const Image x = random_image(8, 8, rng);
  const Image y = convolve_channels(x, gaussian_kernel(1.0, 7), Boundary::kCircular);
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x.values()[i];
    sy += y.values()[i];
  }
  EXPECT_NEAR(sx, sy, 1e-10);  // circular blur keeps the DC term
}

TEST(BlurTest, AttenuatesHighFrequencyTrigger) {
  const Image pattern = ctrl_trigger_pattern(16, CtrlTrigger::from_pixel_scale(100));
  const Image blurred = convolve_channels(pattern, gaussian_kernel(1.0, 7), Boundary::kCircular);
  EXPECT_LT(squared_norm(blurred.values()), 0.05 * squared_norm(pattern.values()));
}

TEST(FreqMaskTest, PatchMaskCountsAndContract) {
  const FreqMask m = FreqMask::with_patch(8, 8, {2, 3, 2, 2});
  EXPECT_EQ(m.zero_count(), 4u);
  EXPECT_TRUE(m.keeps_dc());
  EXPECT_EQ(m(2, 3), 0.0);
  EXPECT_EQ(m(4, 3), 1.0);
  try {
    FreqMask::with_patch(8, 8, {0, 0, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kContract);
  }
  EXPECT_THROW(FreqMask::with_patch(8, 8, {7, 7, 2, 2}), Error);
  EXPECT_THROW(FreqMask(Plane(2, 2, 0.5)), Error);
}

TEST(FreqMaskTest, SampledMasksAvoidDcAndRespectSides) {
  Rng rng = make_rng(3);
  const FreqPatchConfig cfg{1.0, 1, 3};
  for (int i = 0; i < 200; ++i) {
    const FreqMask m = sample_freq_mask(cfg, 8, 8, rng);
    EXPECT_TRUE(m.keeps_dc());
    EXPECT_GE(m.zero_count(), 1u);
    EXPECT_LE(m.zero_count(), 9u);
  }
}

TEST(FreqPatchTest, AllOnesMaskIsIdentityAndPatchRemovesCoefficients) {
  std::mt19937_64 rng(4);
  const Image x = random_image(8, 8, rng, 0.3, 0.7);
  EXPECT_LT(max_abs_diff(apply_freq_mask(x, FreqMask(8, 8)), x), 1e-12);

  Image yuv = rgb_to_yuv(x);  // unclamped path
  const FreqMask m = FreqMask::with_patch(8, 8, {1, 1, 2, 2});
  const Image patched = apply_freq_mask(yuv, m);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const Plane X = dct2(patched.channel(ch));
    EXPECT_NEAR(X(1, 1), 0.0, 1e-12);
    EXPECT_NEAR(X(2, 2), 0.0, 1e-12);
    EXPECT_NEAR(X(0, 0), dct2(yuv.channel(ch))(0, 0), 1e-12);
  }
}

TEST(FreqPatchTest, ProbabilityZeroIsIdentity) {
  std::mt19937_64 rng(5);
  const Image x = random_image(8, 8, rng);
  AugmentConfig c = AugmentConfig::identity();
  EXPECT_EQ(freq_patch(x, c, 1), x);
  c.freq_patch.probability = 1.0;
  EXPECT_NE(freq_patch(x, c, 1), x);
  EXPECT_EQ(freq_patch(x, c, 1), freq_patch(x, c, 1));
}

TEST(LumaViewTest, ReplicatesLuma) {
  std::mt19937_64 rng(6);
  const Image x = random_image(4, 5, rng);
  const Image y = luma_view(x);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      const double want = 0.2126 * x(0, r, c) + 0.7152 * x(1, r, c) + 0.0722 * x(2, r, c);
      for (std::size_t ch = 0; ch < 3; ++ch) EXPECT_NEAR(y(ch, r, c), want, 1e-15);
    }
  }
  EXPECT_THROW(luma_view(Image(2, 2, Colorspace::kYuv)), Error);
}

TEST(LumaViewTest, RemovesUnclampedCtrlTrigger) {
  std::mt19937_64 rng(7);
  const Image x = random_image(16, 16, rng, 0.3, 0.7);
  const Image y = ctrl_poison_unclamped(x, CtrlTrigger::from_pixel_scale(100));
  EXPECT_LT(max_abs_diff(luma_view(x), luma_view(y)), 1e-12);
}

TEST(GeometricTest, FlipIsAnInvolution) {
  std::mt19937_64 rng(8);
  const Image x = random_image(5, 6, rng);
  const Image f = horizontal_flip(x);
  EXPECT_EQ(f(1, 2, 0), x(1, 2, 5));
  EXPECT_EQ(horizontal_flip(f), x);
}

TEST(GeometricTest, FullScaleCropIsNearIdentity) {
  std::mt19937_64 rng(9);
  const Image x = random_image(8, 8, rng);
  Rng r = make_rng(1);
  // scale 1 and aspect ratio near 1 leave the full frame; the aspect draw can
  // still shave a row or column, so check only that values stay in range.
  const Image y = random_resized_crop(x, {1.0, 1.0, 1.0}, r);
  for (double v : y.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(y.height(), 8u);
}

TEST(JitterTest, ZeroStrengthIsIdentity) {
  std::mt19937_64 rng(10);
  const Image x = random_image(6, 6, rng);
  Rng r = make_rng(2);
  EXPECT_LT(max_abs_diff(color_jitter(x, 0.0, r), x), 1e-12);
}

TEST(JitterTest, SaturationKeepsLumaOfGrayImages) {
  const Image gray(4, 4, Colorspace::kRgb, 0.5);
  Rng r = make_rng(3);
  const Image y = color_jitter(gray, 0.4, r);
  // A gray image stays gray: all channels equal.
  for (std::size_t i = 0; i < y.plane_size(); ++i) {
    EXPECT_NEAR(y.values()[i], y.values()[i + y.plane_size()], 1e-12);
    EXPECT_NEAR(y.values()[i], y.values()[i + 2 * y.plane_size()], 1e-12);
  }
}

TEST(ViewsTest, DeterministicAndDistinct) {
  std::mt19937_64 rng(11);
  const Image x = random_image(16, 16, rng);
  const AugmentConfig c;
  const auto [a, b] = make_views(x, c, 42);
  const auto [a2, b2] = make_views(x, c, 42);
  EXPECT_EQ(a, a2);
  EXPECT_EQ(b, b2);
  EXPECT_NE(a, b);
  for (double v : a.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace freqguard
