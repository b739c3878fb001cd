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

#include "freqguard/analysis.h"

#include <algorithm>
#include <cmath>

#include "freqguard/seed.h"
#include "freqguard/transforms.h"

namespace freqguard {

double blur_identity_check(std::span<const Image> images, const CtrlTrigger& spec,
                           double sigma) {
  require(!images.empty(), ErrorKind::kContract, "blur_identity_check: no images");
  const std::size_t side = images.front().height();
  const std::size_t size = std::min(gaussian_kernel_size(sigma), side % 2 ? side : side - 1);
  const Kernel kernel = gaussian_kernel(sigma, size);
  const Image blurred_trigger =
      convolve_channels(ctrl_trigger_pattern(side, spec), kernel, Boundary::kCircular);

  double worst = 0.0;
  for (const Image& x : images) {
    require(x.height() == side && x.width() == side, ErrorKind::kShape,
            "blur_identity_check: images must share one square shape");
    const Image blurred_poison =
        convolve_channels(ctrl_poison(x, spec), kernel, Boundary::kCircular);
    const Image blurred_clean = convolve_channels(x, kernel, Boundary::kCircular);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double predicted = blurred_clean.values()[i] + blurred_trigger.values()[i];
      worst = std::max(worst, std::abs(blurred_poison.values()[i] - predicted));
    }
  }
  return worst;
}

ResidualStats residual_stats(std::span<const Residual> residuals) {
  require(residuals.size() >= 2, ErrorKind::kContract,
          "residual_stats: need at least two residuals");
  const Image& first = residuals.front().values;
  for (const Residual& r : residuals) {
    require(r.values.same_shape(first), ErrorKind::kShape,
            "residual_stats: residual shapes differ");
  }
  const auto n = static_cast<double>(residuals.size());
  Image mean(first.height(), first.width(), first.colorspace());
  Image variance(first.height(), first.width(), first.colorspace());
  double energy = 0.0;
  for (const Residual& r : residuals) {
    for (std::size_t i = 0; i < first.size(); ++i) {
      mean.values()[i] += r.values.values()[i];
      energy += r.values.values()[i] * r.values.values()[i];
    }
  }
  for (double& m : mean.values()) m /= n;
  for (const Residual& r : residuals) {
    for (std::size_t i = 0; i < first.size(); ++i) {
      const double d = r.values.values()[i] - mean.values()[i];
      variance.values()[i] += d * d;
    }
  }
  double total = 0.0;
  for (double& v : variance.values()) {
    v /= n - 1.0;
    total += v;
  }
  return {std::move(mean), std::move(variance),
          total / static_cast<double>(first.size()), energy / n};
}

AmplificationReport variance_amplification(std::span<const Image> images,
                                           const TriggerSpec& spec,
                                           const BlurConfig& blur,
                                           std::uint64_t seed) {
  require(images.size() >= 10, ErrorKind::kContract,
          "variance_amplification: need at least 10 images");
  BlurConfig always = blur;
  always.probability = 1.0;
  std::vector<Residual> raw;
  std::vector<Residual> blurred;
  raw.reserve(images.size());
  blurred.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Image& x = images[i];
    const Image y = poison(x, spec, derive_seed(seed, "amplification.poison", i));
    raw.push_back(residual(x, y));
    const BlurDraw draw = draw_blur(always, derive_seed(seed, "amplification.blur", i));
    const std::size_t size = blur_kernel_size(always, std::min(x.height(), x.width()));
    blurred.push_back(residual(gaussian_blur(x, draw.sigma, size),
                               gaussian_blur(y, draw.sigma, size)));
  }
  AmplificationReport report;
  report.blurred_variance = residual_stats(blurred).total_variance;
  report.raw_variance = residual_stats(raw).total_variance;
  report.ratio = report.blurred_variance / std::max(report.raw_variance, kVarianceGuard);
  return report;
}

double compaction_error(const Image& image, const FreqMask& mask) {
  require(mask.keeps_dc(), ErrorKind::kContract,
          "compaction_error: mask zeroes the DC coefficient");
  require(mask.height() == image.height() && mask.width() == image.width(),
          ErrorKind::kShape, "compaction_error: mask shape differs from image");
  double worst = 0.0;
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    const Plane x = image.channel(ch);
    const Plane patched = idct2(mask.apply(dct2(x)));
    double err = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = patched.values()[i] - x.values()[i];
      err += d * d;
      norm += x.values()[i] * x.values()[i];
    }
    if (norm > 0.0) worst = std::max(worst, std::sqrt(err / norm));
  }
  return worst;
}

}  // namespace freqguard
