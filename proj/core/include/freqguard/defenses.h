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

#ifndef FREQGUARD_DEFENSES_H_
#define FREQGUARD_DEFENSES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "freqguard/image.h"
#include "freqguard/seed.h"
#include "freqguard/transforms.h"

namespace freqguard {

struct CropConfig {
  double probability = 1.0;
  double scale_min = 0.2;
  double scale_max = 1.0;
};

struct JitterConfig {
  double probability = 0.8;
  double strength = 0.4;  // brightness, contrast and saturation factors in [1-s, 1+s]
};

struct BlurConfig {
  double probability = 0.5;
  double sigma_min = 0.3;
  double sigma_max = 1.5;
};

struct FreqPatchConfig {
  double probability = 0.0;
  std::size_t side_min = 1;
  std::size_t side_max = 4;
};

// Probabilities and parameter ranges of the stochastic view pipeline. Steps
// run in declaration order: crop, flip, jitter, grayscale, blur, freq patch.
struct AugmentConfig {
  CropConfig crop;
  double flip_probability = 0.5;
  JitterConfig jitter;
  double grayscale_probability = 0.2;
  BlurConfig blur;
  FreqPatchConfig freq_patch;

  // Every step disabled.
  static AugmentConfig identity();
};

void validate(const AugmentConfig& config, std::size_t image_side);

struct PatchRect {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t height = 1;
  std::size_t width = 1;

  bool contains(std::size_t r, std::size_t c) const {
    return r >= row && r < row + height && c >= col && c < col + width;
  }
};

// Binary mask over DCT coefficients.
class FreqMask {
 public:
  // All ones.
  FreqMask(std::size_t height, std::size_t width);
  // Arbitrary 0/1 mask; throws kParameter on non-binary values.
  explicit FreqMask(Plane values);
  // Zero rectangle P, ones elsewhere. Throws kContract if (0, 0) is in P.
  static FreqMask with_patch(std::size_t height, std::size_t width, PatchRect patch);

  std::size_t height() const { return values_.height(); }
  std::size_t width() const { return values_.width(); }
  double operator()(std::size_t r, std::size_t c) const { return values_(r, c); }
  const Plane& values() const { return values_; }
  bool keeps_dc() const { return values_(0, 0) == 1.0; }
  std::size_t zero_count() const;

  Plane apply(const Plane& coefficients) const;

 private:
  Plane values_;
};

struct BlurDraw {
  bool applied = false;
  double sigma = 0.0;
};

/// The random decision and strength blur_augment makes for `seed`.
BlurDraw draw_blur(const BlurConfig& config, std::uint64_t seed);
/// Kernel side used by blur_augment: smallest odd >= 6 sigma_max, capped to fit.
std::size_t blur_kernel_size(const BlurConfig& config, std::size_t image_side);
Image gaussian_blur(const Image& image, double sigma, std::size_t kernel_size,
                    Boundary boundary = Boundary::kReflect);
Image blur_augment(const Image& image, const AugmentConfig& config,
                   std::uint64_t seed);

/// Samples a patch uniformly among rectangles of the configured side range,
/// rejecting any that cover (0, 0).
FreqMask sample_freq_mask(const FreqPatchConfig& config, std::size_t height,
                          std::size_t width, Rng& rng);
/// Per-channel dct2, mask, idct2; RGB results are clamped.
Image apply_freq_mask(const Image& image, const FreqMask& mask);
Image freq_patch(const Image& image, const AugmentConfig& config,
                 std::uint64_t seed);

/// Replicates the luma channel into all three channels.
Image luma_view(const Image& image);

Image random_resized_crop(const Image& image, const CropConfig& config, Rng& rng);
Image horizontal_flip(const Image& image);
Image color_jitter(const Image& image, double strength, Rng& rng);

/// Seed of view `which` (0 or 1) for a make_views call.
std::uint64_t view_seed(std::uint64_t seed, std::size_t which);
/// Seed consumed by one named step ("crop", "flip", "jitter", "grayscale",
/// "blur", "freq_patch") inside compose_view.
std::uint64_t step_seed(std::uint64_t seed, std::string_view step);

Image compose_view(const Image& image, const AugmentConfig& config,
                   std::uint64_t seed);
std::pair<Image, Image> make_views(const Image& image, const AugmentConfig& config,
                                   std::uint64_t seed);

}  // namespace freqguard

#endif  // FREQGUARD_DEFENSES_H_
