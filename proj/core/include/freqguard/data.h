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

#ifndef FREQGUARD_DATA_H_
#define FREQGUARD_DATA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freqguard/attacks.h"
#include "freqguard/image.h"

namespace freqguard {

struct Dataset {
  std::vector<Image> images;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;
  std::string name;

  std::size_t size() const { return images.size(); }
  bool empty() const { return images.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Throws kShape / kContract if labels, counts or shapes are inconsistent.
void validate(const Dataset& dataset);

struct PoisonManifest {
  TriggerSpec attack = CtrlTrigger{};
  std::size_t target_class = 0;
  double poison_ratio = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> poisoned_indices;  // sorted, unique
};

bool operator==(const PoisonManifest& a, const PoisonManifest& b);

// Published CIFAR binary layouts: one label byte (CIFAR-10) or a coarse and a
// fine label byte (CIFAR-100), then 1024 R, 1024 G and 1024 B bytes of a
// 32x32 image in row-major order.
inline constexpr std::size_t kCifarSide = 32;
inline constexpr std::size_t kCifar10RecordBytes = 1 + 3 * kCifarSide * kCifarSide;
inline constexpr std::size_t kCifar100RecordBytes = 2 + 3 * kCifarSide * kCifarSide;

enum class Cifar100Label { kFine, kCoarse };

Dataset load_cifar10(const std::filesystem::path& path);
Dataset load_cifar100(const std::filesystem::path& path,
                      Cifar100Label label = Cifar100Label::kFine);

/// Smooth class-conditional Gaussian blobs plus seeded noise. Class layout
/// (blob center and color) depends only on the class id, so datasets drawn
/// with different seeds share one class family.
Dataset gen_synthetic(std::size_t num_classes, std::size_t per_class, std::size_t side,
                      std::uint64_t seed);

/// Number of samples poisoned for a ratio of the full dataset.
std::size_t poison_count(std::size_t dataset_size, double ratio);

/// Label-consistent poisoning: samples are drawn without replacement from the
/// target class only. Every other image is left bit-identical.
std::pair<Dataset, PoisonManifest> poison_dataset(const Dataset& dataset,
                                                  const TriggerSpec& attack,
                                                  std::size_t target_class, double ratio,
                                                  std::uint64_t seed);

// On-disk layout: `data.f64` holds N x 3 x H x W little-endian doubles;
// `meta.json` holds shape, labels, num_classes, name and the manifest.
inline constexpr const char* kTensorFile = "data.f64";
inline constexpr const char* kMetaFile = "meta.json";

void export_dataset(const Dataset& dataset, const std::optional<PoisonManifest>& manifest,
                    const std::filesystem::path& out_dir);
std::pair<Dataset, std::optional<PoisonManifest>> import_dataset(
    const std::filesystem::path& dir);

}  // namespace freqguard

#endif  // FREQGUARD_DATA_H_
