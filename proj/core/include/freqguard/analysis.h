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

#ifndef FREQGUARD_ANALYSIS_H_
#define FREQGUARD_ANALYSIS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "freqguard/attacks.h"
#include "freqguard/defenses.h"
#include "freqguard/image.h"

namespace freqguard {

struct ResidualStats {
  Image mean;
  Image variance;         // unbiased per-pixel variance across the set
  double total_variance;  // mean of the per-pixel variances
  double energy;          // mean over residuals of the squared L2 norm
};

/// Largest L-inf gap, over images, between blur(poison(x)) and
/// blur(x) + blur(trigger pattern) with circular convolution. Zero up to
/// rounding when the clamp never engages; the clamp breaks it.
double blur_identity_check(std::span<const Image> images, const CtrlTrigger& spec,
                           double sigma);

ResidualStats residual_stats(std::span<const Residual> residuals);

struct AmplificationReport {
  double blurred_variance = 0.0;  // numerator
  double raw_variance = 0.0;      // denominator before the guard
  double ratio = 0.0;
};

inline constexpr double kVarianceGuard = 1e-15;

/// Total variance of blurred-poison residuals (random sigma per image, drawn
/// from `blur` with probability forced to 1) over that of raw residuals.
AmplificationReport variance_amplification(std::span<const Image> images,
                                           const TriggerSpec& spec,
                                           const BlurConfig& blur,
                                           std::uint64_t seed);

/// max over channels of ||idct2(mask * dct2(x)) - x|| / ||x||.
double compaction_error(const Image& image, const FreqMask& mask);

}  // namespace freqguard

#endif  // FREQGUARD_ANALYSIS_H_
