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

#include <algorithm>
#include <cmath>
#include <string>

namespace freqguard {
namespace {

void require_probability(double p, const char* name) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorKind::kParameter,
          std::string(name) + " must lie in [0, 1]");
}

double bilinear(std::span<const double> plane, std::size_t height, std::size_t width,
                double y, double x) {
  y = std::clamp(y, 0.0, static_cast<double>(height - 1));
  x = std::clamp(x, 0.0, static_cast<double>(width - 1));
  const auto y0 = static_cast<std::size_t>(std::floor(y));
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const std::size_t y1 = std::min(y0 + 1, height - 1);
  const std::size_t x1 = std::min(x0 + 1, width - 1);
  const double fy = y - static_cast<double>(y0);
  const double fx = x - static_cast<double>(x0);
  const double top = plane[y0 * width + x0] * (1.0 - fx) + plane[y0 * width + x1] * fx;
  const double bottom = plane[y1 * width + x0] * (1.0 - fx) + plane[y1 * width + x1] * fx;
  return top * (1.0 - fy) + bottom * fy;
}

Image clamp_if_rgb(Image image) {
  if (image.colorspace() == Colorspace::kRgb) return clamp_unit(image);
  return image;
}

}  // namespace

AugmentConfig AugmentConfig::identity() {
  AugmentConfig config;
  config.crop.probability = 0.0;
  config.flip_probability = 0.0;
  config.jitter.probability = 0.0;
  config.grayscale_probability = 0.0;
  config.blur.probability = 0.0;
  config.freq_patch.probability = 0.0;
  return config;
}

void validate(const AugmentConfig& config, std::size_t image_side) {
  require_probability(config.crop.probability, "crop.probability");
  require_probability(config.flip_probability, "flip_probability");
  require_probability(config.jitter.probability, "jitter.probability");
  require_probability(config.grayscale_probability, "grayscale_probability");
  require_probability(config.blur.probability, "blur.probability");
  require_probability(config.freq_patch.probability, "freq_patch.probability");
  require(config.crop.scale_min > 0.0 && config.crop.scale_min <= config.crop.scale_max &&
              config.crop.scale_max <= 1.0,
          ErrorKind::kParameter, "crop scale range must satisfy 0 < min <= max <= 1");
  require(config.jitter.strength >= 0.0 && config.jitter.strength <= 1.0,
          ErrorKind::kParameter, "jitter.strength must lie in [0, 1]");
  require(config.blur.sigma_min > 0.0 && config.blur.sigma_min <= config.blur.sigma_max &&
              std::isfinite(config.blur.sigma_max),
          ErrorKind::kParameter, "blur sigma range must satisfy 0 < min <= max");
  require(config.freq_patch.side_min >= 1 &&
              config.freq_patch.side_min <= config.freq_patch.side_max &&
              config.freq_patch.side_max < image_side,
          ErrorKind::kParameter,
          "freq_patch sides must satisfy 1 <= min <= max < image side (" +
              std::to_string(image_side) + ")");
}

FreqMask::FreqMask(std::size_t height, std::size_t width) : values_(height, width, 1.0) {}

FreqMask::FreqMask(Plane values) : values_(std::move(values)) {
  for (double v : values_.values()) {
    require(v == 0.0 || v == 1.0, ErrorKind::kParameter, "mask values must be 0 or 1");
  }
}

FreqMask FreqMask::with_patch(std::size_t height, std::size_t width, PatchRect patch) {
  require(patch.height >= 1 && patch.width >= 1 && patch.row + patch.height <= height &&
              patch.col + patch.width <= width,
          ErrorKind::kParameter, "frequency patch does not fit the mask");
  require(!patch.contains(0, 0), ErrorKind::kContract,
          "frequency patch must not cover the DC coefficient (0, 0)");
  Plane values(height, width, 1.0);
  for (std::size_t r = patch.row; r < patch.row + patch.height; ++r) {
    for (std::size_t c = patch.col; c < patch.col + patch.width; ++c) values(r, c) = 0.0;
  }
  return FreqMask(std::move(values));
}

std::size_t FreqMask::zero_count() const {
  return static_cast<std::size_t>(
      std::count(values_.values().begin(), values_.values().end(), 0.0));
}

Plane FreqMask::apply(const Plane& coefficients) const {
  require(coefficients.same_shape(values_), ErrorKind::kShape,
          "mask shape differs from coefficient plane");
  Plane out = coefficients;
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] *= values_.values()[i];
  return out;
}

BlurDraw draw_blur(const BlurConfig& config, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  BlurDraw draw;
  draw.applied = bernoulli(rng, config.probability);
  if (draw.applied) draw.sigma = uniform(rng, config.sigma_min, config.sigma_max);
  return draw;
}

std::size_t blur_kernel_size(const BlurConfig& config, std::size_t image_side) {
  std::size_t size = gaussian_kernel_size(config.sigma_max);
  const std::size_t cap = image_side % 2 == 1 ? image_side : image_side - 1;
  return std::min(size, std::max<std::size_t>(cap, 1));
}

Image gaussian_blur(const Image& image, double sigma, std::size_t kernel_size,
                    Boundary boundary) {
  return clamp_if_rgb(
      convolve_channels(image, gaussian_kernel(sigma, kernel_size), boundary));
}

Image blur_augment(const Image& image, const AugmentConfig& config, std::uint64_t seed) {
  validate(config, std::min(image.height(), image.width()));
  const BlurDraw draw = draw_blur(config.blur, seed);
  if (!draw.applied) return image;
  return gaussian_blur(image, draw.sigma,
                       blur_kernel_size(config.blur, std::min(image.height(), image.width())));
}

FreqMask sample_freq_mask(const FreqPatchConfig& config, std::size_t height,
                          std::size_t width, Rng& rng) {
  require(config.side_min >= 1 && config.side_min <= config.side_max &&
              config.side_max < std::min(height, width),
          ErrorKind::kParameter, "freq_patch sides out of range for this image");
  const auto lo = static_cast<std::int64_t>(config.side_min);
  const auto hi = static_cast<std::int64_t>(config.side_max);
  while (true) {
    PatchRect patch;
    patch.height = static_cast<std::size_t>(uniform_int(rng, lo, hi));
    patch.width = static_cast<std::size_t>(uniform_int(rng, lo, hi));
    patch.row = static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<std::int64_t>(height - patch.height)));
    patch.col = static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<std::int64_t>(width - patch.width)));
    if (!patch.contains(0, 0)) return FreqMask::with_patch(height, width, patch);
  }
}

Image apply_freq_mask(const Image& image, const FreqMask& mask) {
  Image out(image.height(), image.width(), image.colorspace());
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    out.set_channel(ch, idct2(mask.apply(dct2(image.channel(ch)))));
  }
  return clamp_if_rgb(std::move(out));
}

Image freq_patch(const Image& image, const AugmentConfig& config, std::uint64_t seed) {
  validate(config, std::min(image.height(), image.width()));
  Rng rng = make_rng(seed);
  if (!bernoulli(rng, config.freq_patch.probability)) return image;
  const FreqMask mask =
      sample_freq_mask(config.freq_patch, image.height(), image.width(), rng);
  return apply_freq_mask(image, mask);
}

Image luma_view(const Image& image) {
  require(image.colorspace() == Colorspace::kRgb, ErrorKind::kColorspace,
          "luma_view expects an RGB image");
  Image out(image.height(), image.width(), Colorspace::kRgb);
  for (std::size_t r = 0; r < image.height(); ++r) {
    for (std::size_t c = 0; c < image.width(); ++c) {
      const double y = luma(image(0, r, c), image(1, r, c), image(2, r, c));
      for (std::size_t ch = 0; ch < Image::kChannels; ++ch) out(ch, r, c) = y;
    }
  }
  return out;
}

Image random_resized_crop(const Image& image, const CropConfig& config, Rng& rng) {
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  const double area = static_cast<double>(h * w);
  std::size_t crop_h = h;
  std::size_t crop_w = w;
  std::size_t top = 0;
  std::size_t left = 0;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const double target = area * uniform(rng, config.scale_min, config.scale_max);
    const double ratio = std::exp(uniform(rng, std::log(3.0 / 4.0), std::log(4.0 / 3.0)));
    const auto cw = static_cast<std::size_t>(std::lround(std::sqrt(target * ratio)));
    const auto ch = static_cast<std::size_t>(std::lround(std::sqrt(target / ratio)));
    if (cw >= 1 && ch >= 1 && cw <= w && ch <= h) {
      crop_h = ch;
      crop_w = cw;
      top = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(h - ch)));
      left = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(w - cw)));
      break;
    }
  }
  Image out(h, w, image.colorspace());
  const double scale_y = static_cast<double>(crop_h) / static_cast<double>(h);
  const double scale_x = static_cast<double>(crop_w) / static_cast<double>(w);
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    const auto src = image.channel_values(ch);
    for (std::size_t r = 0; r < h; ++r) {
      const double y = static_cast<double>(top) +
                       (static_cast<double>(r) + 0.5) * scale_y - 0.5;
      for (std::size_t c = 0; c < w; ++c) {
        const double x = static_cast<double>(left) +
                         (static_cast<double>(c) + 0.5) * scale_x - 0.5;
        out(ch, r, c) = bilinear(src, h, w, y, x);
      }
    }
  }
  return clamp_if_rgb(std::move(out));
}

Image horizontal_flip(const Image& image) {
  Image out(image.height(), image.width(), image.colorspace());
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    for (std::size_t r = 0; r < image.height(); ++r) {
      for (std::size_t c = 0; c < image.width(); ++c) {
        out(ch, r, c) = image(ch, r, image.width() - 1 - c);
      }
    }
  }
  return out;
}

Image color_jitter(const Image& image, double strength, Rng& rng) {
  const double brightness = uniform(rng, 1.0 - strength, 1.0 + strength);
  const double contrast = uniform(rng, 1.0 - strength, 1.0 + strength);
  const double saturation = uniform(rng, 1.0 - strength, 1.0 + strength);

  Image out = image;
  for (double& v : out.values()) v *= brightness;
  out = clamp_unit(out);

  const Image gray = luma_view(out);
  double mean = 0.0;
  for (double v : gray.channel_values(0)) mean += v;
  mean /= static_cast<double>(gray.plane_size());
  for (double& v : out.values()) v = (v - mean) * contrast + mean;
  out = clamp_unit(out);

  const Image gray2 = luma_view(out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = (out.values()[i] - gray2.values()[i]) * saturation + gray2.values()[i];
  }
  return clamp_unit(out);
}

std::uint64_t view_seed(std::uint64_t seed, std::size_t which) {
  return derive_seed(seed, "view", which);
}

std::uint64_t step_seed(std::uint64_t seed, std::string_view step) {
  return derive_seed(seed, step);
}

Image compose_view(const Image& image, const AugmentConfig& config, std::uint64_t seed) {
  validate(config, std::min(image.height(), image.width()));
  Image view = image;
  {
    Rng rng = make_rng(step_seed(seed, "crop"));
    if (bernoulli(rng, config.crop.probability)) view = random_resized_crop(view, config.crop, rng);
  }
  {
    Rng rng = make_rng(step_seed(seed, "flip"));
    if (bernoulli(rng, config.flip_probability)) view = horizontal_flip(view);
  }
  {
    Rng rng = make_rng(step_seed(seed, "jitter"));
    if (bernoulli(rng, config.jitter.probability)) {
      view = color_jitter(view, config.jitter.strength, rng);
    }
  }
  {
    Rng rng = make_rng(step_seed(seed, "grayscale"));
    if (bernoulli(rng, config.grayscale_probability)) view = luma_view(view);
  }
  view = blur_augment(view, config, step_seed(seed, "blur"));
  view = freq_patch(view, config, step_seed(seed, "freq_patch"));
  return view;
}

std::pair<Image, Image> make_views(const Image& image, const AugmentConfig& config,
                                   std::uint64_t seed) {
  return {compose_view(image, config, view_seed(seed, 0)),
          compose_view(image, config, view_seed(seed, 1))};
}

}  // namespace freqguard
