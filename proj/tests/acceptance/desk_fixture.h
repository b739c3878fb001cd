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

#ifndef FREQGUARD_TESTS_ACCEPTANCE_DESK_FIXTURE_H_
#define FREQGUARD_TESTS_ACCEPTANCE_DESK_FIXTURE_H_

#include <array>
#include <cstdint>

#include "freqguard/data.h"
#include "freqguard/defenses.h"
#include "freqguard/pipeline.h"
#include "freqguard/trainer.h"

// Desk-scale end-to-end fixture: 3 synthetic classes, 200 per class, 16x16,
// CTRL trigger at full pixel-scale magnitude on 5% of the training set (all
// drawn from target class 0), linear encoder, 30 epochs.
//
// Calibration (frozen 2026-10-16, same code path as below):
//
//   seed  vanilla ACC / ASR   blur ACC / ASR
//   0     1.000 / 0.370       1.000 / 0.000
//   1     1.000 / 0.970       1.000 / 0.000
//   2     1.000 / 0.485       1.000 / 0.000
//   mean  1.000 / 0.608       1.000 / 0.000    ~55 s single core
//
// Thresholds: ASR gap >= 0.30, ACC drop <= 0.05.
//
// Settings that did not plant the trigger, kept here so they are not retried:
//   - c = 100/200/400 with crop + flip at lr 0.06: ASR 0. Crops move the
//     trigger off its frequency bins and a flip negates it (odd indices).
//   - grayscale with p = 0.2: ASR 0, the trigger lives in chroma only.
//   - color jitter only at lr 0.06: ASR ~0.3 with large seed variance.
// So "vanilla" here is color jitter alone; the blur arm adds blur with p = 1.
namespace freqguard::acceptance {

inline constexpr std::array<std::uint64_t, 3> kDeskSeeds = {0, 1, 2};
inline constexpr std::size_t kDeskClasses = 3;
inline constexpr std::size_t kDeskPerClass = 200;
inline constexpr std::size_t kDeskTestPerClass = 100;
inline constexpr std::size_t kDeskSide = 16;
inline constexpr std::size_t kDeskTarget = 0;
inline constexpr double kDeskPoisonRatio = 0.05;
inline constexpr double kDeskMagnitude255 = 255.0;
inline constexpr double kAsrGapThreshold = 0.30;
inline constexpr double kAccDropThreshold = 0.05;

inline AugmentConfig desk_vanilla_augment() {
  AugmentConfig a = AugmentConfig::identity();
  a.jitter.probability = 0.8;
  return a;
}

inline AugmentConfig desk_blur_augment() {
  AugmentConfig a = desk_vanilla_augment();
  a.blur.probability = 1.0;
  a.blur.sigma_min = 0.5;
  a.blur.sigma_max = 1.5;
  return a;
}

inline TrainConfig desk_train_config(std::uint64_t seed) {
  TrainConfig c;
  c.seed = seed;
  c.learning_rate = 0.5;
  c.embedding_dim = 64;
  c.epochs = 30;
  c.batch_size = 64;
  c.temperature = 0.5;
  return c;
}

inline Dataset desk_train_split(std::uint64_t seed) {
  return gen_synthetic(kDeskClasses, kDeskPerClass, kDeskSide, seed);
}

inline Dataset desk_test_split(std::uint64_t seed) {
  return gen_synthetic(kDeskClasses, kDeskTestPerClass, kDeskSide, seed + 1000);
}

inline TriggerSpec desk_trigger() { return CtrlTrigger::from_pixel_scale(kDeskMagnitude255); }

// One arm for one seed. `poison` false trains on the clean split.
inline MetricsReport run_desk_arm(const AugmentConfig& augment, std::uint64_t seed,
                                  bool poison = true) {
  const Dataset clean = desk_train_split(seed);
  const TriggerSpec trigger = desk_trigger();
  std::optional<PoisonManifest> manifest;
  Dataset train = clean;
  if (poison) {
    auto [poisoned, m] = poison_dataset(clean, trigger, kDeskTarget, kDeskPoisonRatio, seed);
    train = std::move(poisoned);
    manifest = std::move(m);
  }
  const TrainResult trained = train_encoder(train, augment, desk_train_config(seed));
  return evaluate_backdoor(trained.params, train, manifest, desk_test_split(seed), trigger,
                           kDeskTarget, seed)
      .metrics;
}

}  // namespace freqguard::acceptance

#endif  // FREQGUARD_TESTS_ACCEPTANCE_DESK_FIXTURE_H_
