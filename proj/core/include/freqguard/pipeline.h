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

#ifndef FREQGUARD_PIPELINE_H_
#define FREQGUARD_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "freqguard/attacks.h"
#include "freqguard/data.h"
#include "freqguard/eval.h"
#include "freqguard/trainer.h"

namespace freqguard {

struct EvalSettings {
  std::size_t k = 0;  // 0: default_k(memory bank size)
  Metric metric = Metric::kCosine;
  InferenceTransform transform = InferenceTransform::kNone;
};

/// Triggered copy of every image. Per-image seeds only matter for HTBA.
Dataset trigger_all(const Dataset& dataset, const TriggerSpec& attack, std::uint64_t seed);

struct BackdoorEvaluation {
  MetricsReport metrics;
  EmbeddingSet bank;       // training set, poisoned flags from the manifest
  EmbeddingSet clean;      // clean test split
  EmbeddingSet triggered;  // every test image with the trigger applied
};

/// KNN evaluation against the embedded training set: ACC on the clean test
/// split, ASR on its triggered copy.
BackdoorEvaluation evaluate_backdoor(const EncoderParams& encoder, const Dataset& train,
                                     const std::optional<PoisonManifest>& manifest,
                                     const Dataset& test, const TriggerSpec& attack,
                                     std::size_t target_class, std::uint64_t seed,
                                     const EvalSettings& settings = {});

}  // namespace freqguard

#endif  // FREQGUARD_PIPELINE_H_
