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

#include "freqguard/attacks.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "freqguard/seed.h"
#include "freqguard/transforms.h"

namespace freqguard {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t require_square(const Image& image, const char* op) {
  require(image.height() == image.width(), ErrorKind::kShape,
          std::string(op) + ": image must be square, got " +
              std::to_string(image.height()) + "x" + std::to_string(image.width()));
  require(image.height() >= 2, ErrorKind::kShape,
          std::string(op) + ": image side must be at least 2");
  return image.height();
}

Plane inject(const Plane& chroma, const Plane& trigger, SpectralTransform transform) {
  if (transform == SpectralTransform::kDct) {
    Plane coefficients = dct2(chroma);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      coefficients.values()[i] += trigger.values()[i];
    }
    return idct2(coefficients);
  }
  ComplexPlane spectrum = fft2(chroma);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spectrum.values()[i] += trigger.values()[i];
  }
  return ifft2(spectrum);
}

Plane inverse_transform(const Plane& coefficients, SpectralTransform transform) {
  if (transform == SpectralTransform::kDct) return idct2(coefficients);
  std::vector<std::complex<double>> values(coefficients.values().begin(),
                                           coefficients.values().end());
  return ifft2(ComplexPlane(coefficients.height(), coefficients.width(),
                            std::move(values)));
}

std::size_t signed_frequency(std::size_t index, std::size_t n) {
  return std::min(index, n - index);
}

}  // namespace

std::pair<std::size_t, std::size_t> ctrl_positions(std::size_t side) {
  require(side >= 2, ErrorKind::kShape, "ctrl_positions: side must be at least 2");
  return {side / 2 - 1, side - 1};
}

Plane ctrl_frequency_trigger(std::size_t side, const CtrlTrigger& spec) {
  const auto [mid, high] = ctrl_positions(side);
  Plane trigger(side, side);
  for (std::size_t p : {mid, high}) {
    if (spec.transform == SpectralTransform::kDct) {
      trigger(p, p) = spec.magnitude;
      continue;
    }
    // Conjugate-symmetric placement keeps the inverse DFT real.
    const std::size_t mirror = (side - p) % side;
    trigger(p, p) = spec.magnitude;
    trigger(mirror, mirror) = spec.magnitude;
  }
  return trigger;
}

Image ctrl_trigger_pattern(std::size_t side, const CtrlTrigger& spec) {
  const Plane spatial =
      inverse_transform(ctrl_frequency_trigger(side, spec), spec.transform);
  Image yuv(side, side, Colorspace::kYuv);
  if (spec.poison_u) yuv.set_channel(1, spatial);
  if (spec.poison_v) yuv.set_channel(2, spatial);
  return yuv_to_rgb(yuv);
}

Image ctrl_poison_unclamped(const Image& image, const CtrlTrigger& spec) {
  validate(spec);
  const std::size_t side = require_square(image, "ctrl_poison");
  const Plane trigger = ctrl_frequency_trigger(side, spec);
  Image yuv = rgb_to_yuv(image);
  if (spec.poison_u) yuv.set_channel(1, inject(yuv.channel(1), trigger, spec.transform));
  if (spec.poison_v) yuv.set_channel(2, inject(yuv.channel(2), trigger, spec.transform));
  return yuv_to_rgb(yuv);
}

Image ctrl_poison(const Image& image, const CtrlTrigger& spec) {
  return clamp_unit(ctrl_poison_unclamped(image, spec));
}

Plane fiba_mask(std::size_t height, std::size_t width, double beta) {
  require(beta >= 0.0 && beta <= 1.0, ErrorKind::kParameter,
          "fiba_mask: beta must lie in [0, 1]");
  const auto side_h = static_cast<std::size_t>(std::lround(beta * static_cast<double>(height)));
  const auto side_w = static_cast<std::size_t>(std::lround(beta * static_cast<double>(width)));
  Plane mask(height, width);
  if (side_h == 0 || side_w == 0) return mask;
  // Closing the centered window under (u, v) -> (-u, -v) keeps the blended
  // amplitude symmetric, so the inverse transform stays real.
  const std::size_t half_h = side_h / 2;
  const std::size_t half_w = side_w / 2;
  for (std::size_t u = 0; u < height; ++u) {
    for (std::size_t v = 0; v < width; ++v) {
      if (signed_frequency(u, height) <= half_h && signed_frequency(v, width) <= half_w) {
        mask(u, v) = 1.0;
      }
    }
  }
  return mask;
}

Image fiba_poison_unclamped(const Image& image, const FibaTrigger& spec) {
  validate(spec);
  require(image.same_shape(spec.trigger_image), ErrorKind::kShape,
          "fiba_poison: trigger image shape differs from target");
  const Plane mask = fiba_mask(image.height(), image.width(), spec.beta);
  Image out(image.height(), image.width(), image.colorspace());
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    const ComplexPlane target = fft2(image.channel(ch));
    const ComplexPlane source = fft2(spec.trigger_image.channel(ch));
    ComplexPlane blended(image.height(), image.width());
    for (std::size_t i = 0; i < target.size(); ++i) {
      const double amplitude = std::abs(target.values()[i]);
      const double phase = std::arg(target.values()[i]);
      const double trigger_amplitude = std::abs(source.values()[i]);
      const double m = mask.values()[i];
      const double mixed =
          ((1.0 - spec.alpha) * trigger_amplitude + spec.alpha * amplitude) * m +
          amplitude * (1.0 - m);
      blended.values()[i] = std::polar(mixed, phase);
    }
    out.set_channel(ch, ifft2(blended));
  }
  return out;
}

Image fiba_poison(const Image& image, const FibaTrigger& spec) {
  return clamp_unit(fiba_poison_unclamped(image, spec));
}

std::pair<std::size_t, std::size_t> htba_position(const Image& image,
                                                  const HtbaTrigger& spec,
                                                  std::uint64_t seed) {
  validate(spec);
  const std::size_t p = spec.patch_size();
  require(p <= image.height() && p <= image.width(), ErrorKind::kParameter,
          "htba_poison: patch of size " + std::to_string(p) +
              " does not fit a " + std::to_string(image.height()) + "x" +
              std::to_string(image.width()) + " image");
  if (spec.position) {
    const auto [row, col] = *spec.position;
    require(row + p <= image.height() && col + p <= image.width(),
            ErrorKind::kParameter, "htba_poison: fixed placement out of bounds");
    return *spec.position;
  }
  Rng rng = make_rng(derive_seed(seed, "htba.placement"));
  const auto row = uniform_int(rng, 0, static_cast<std::int64_t>(image.height() - p));
  const auto col = uniform_int(rng, 0, static_cast<std::int64_t>(image.width() - p));
  return {static_cast<std::size_t>(row), static_cast<std::size_t>(col)};
}

Image htba_poison(const Image& image, const HtbaTrigger& spec, std::uint64_t seed) {
  const auto [row, col] = htba_position(image, spec, seed);
  Image out = image;
  const std::size_t p = spec.patch_size();
  for (std::size_t ch = 0; ch < Image::kChannels; ++ch) {
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) out(ch, row + r, col + c) = spec.patch(ch, r, c);
    }
  }
  return out;
}

Image poison(const Image& image, const TriggerSpec& spec, std::uint64_t seed) {
  return std::visit(
      Overloaded{
          [&](const CtrlTrigger& t) { return ctrl_poison(image, t); },
          [&](const FibaTrigger& t) { return fiba_poison(image, t); },
          [&](const HtbaTrigger& t) { return htba_poison(image, t, seed); },
      },
      spec);
}

Residual residual(const Image& clean, const Image& poisoned) {
  require(clean.same_shape(poisoned), ErrorKind::kShape,
          "residual: clean and poisoned shapes differ");
  Image diff(clean.height(), clean.width(), clean.colorspace());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    diff.values()[i] = poisoned.values()[i] - clean.values()[i];
  }
  return {std::move(diff)};
}

void validate(const CtrlTrigger& spec) {
  require(std::isfinite(spec.magnitude) && spec.magnitude >= 0.0, ErrorKind::kParameter,
          "ctrl: magnitude must be >= 0");
}

void validate(const FibaTrigger& spec) {
  require(spec.alpha >= 0.0 && spec.alpha <= 1.0, ErrorKind::kParameter,
          "fiba: alpha must lie in [0, 1]");
  require(spec.beta >= 0.0 && spec.beta <= 1.0, ErrorKind::kParameter,
          "fiba: beta must lie in [0, 1]");
}

void validate(const HtbaTrigger& spec) {
  require(spec.patch.height() == spec.patch.width(), ErrorKind::kParameter,
          "htba: patch must be square");
}

void validate(const TriggerSpec& spec) {
  std::visit([](const auto& t) { validate(t); }, spec);
}

}  // namespace freqguard
