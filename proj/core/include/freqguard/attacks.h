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

#ifndef FREQGUARD_ATTACKS_H_
#define FREQGUARD_ATTACKS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>

#include "freqguard/image.h"

namespace freqguard {

enum class SpectralTransform { kDct, kFft };

// Fixed-position chroma trigger. `magnitude` is stored in [0, 1] image units;
// use from_pixel_scale() for the customary 0-255 figures (50, 100, 200).
struct CtrlTrigger {
  double magnitude = 100.0 / 255.0;
  SpectralTransform transform = SpectralTransform::kDct;
  bool poison_u = true;
  bool poison_v = true;

  static CtrlTrigger from_pixel_scale(double magnitude_255) {
    CtrlTrigger t;
    t.magnitude = magnitude_255 / 255.0;
    return t;
  }
};

// Amplitude-spectrum blend of a trigger image into a low-frequency window.
struct FibaTrigger {
  Image trigger_image;
  double alpha = 0.15;
  double beta = 0.1;  // side of the low-frequency window as a fraction of the image side
};

// Opaque square patch pasted at a fixed or seeded-random location.
struct HtbaTrigger {
  Image patch;
  std::optional<std::pair<std::size_t, std::size_t>> position;  // nullopt: random
  std::size_t patch_size() const { return patch.height(); }
};

using TriggerSpec = std::variant<CtrlTrigger, FibaTrigger, HtbaTrigger>;

// Image-space difference between a poisoned image and its clean original.
struct Residual {
  Image values;
};

/// Diagonal frequency positions (s/2 - 1, s - 1), 0-based, for side s.
std::pair<std::size_t, std::size_t> ctrl_positions(std::size_t side);

/// The frequency-domain trigger for one chroma plane of side s.
Plane ctrl_frequency_trigger(std::size_t side, const CtrlTrigger& spec);

/// Image-space trigger pattern in RGB: what CTRL adds to any image before the
/// final clamp. Independent of the image content.
Image ctrl_trigger_pattern(std::size_t side, const CtrlTrigger& spec);

/// CTRL poisoning without the final clamp.
Image ctrl_poison_unclamped(const Image& image, const CtrlTrigger& spec);
Image ctrl_poison(const Image& image, const CtrlTrigger& spec);

/// Symmetric low-frequency mask (1 inside the window around DC, wrap-aware).
Plane fiba_mask(std::size_t height, std::size_t width, double beta);
Image fiba_poison_unclamped(const Image& image, const FibaTrigger& spec);
Image fiba_poison(const Image& image, const FibaTrigger& spec);

/// Top-left corner of the patch for a given seed.
std::pair<std::size_t, std::size_t> htba_position(const Image& image,
                                                  const HtbaTrigger& spec,
                                                  std::uint64_t seed);
Image htba_poison(const Image& image, const HtbaTrigger& spec, std::uint64_t seed);

/// Dispatches on the trigger variant. The seed only matters for HTBA.
Image poison(const Image& image, const TriggerSpec& spec, std::uint64_t seed);

Residual residual(const Image& clean, const Image& poisoned);

void validate(const CtrlTrigger& spec);
void validate(const FibaTrigger& spec);
void validate(const HtbaTrigger& spec);
void validate(const TriggerSpec& spec);

}  // namespace freqguard

#endif  // FREQGUARD_ATTACKS_H_
