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

#include "freqguard/data.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "freqguard/io.h"
#include "freqguard/seed.h"
#include "freqguard/serialization.h"
#include "freqguard/transforms.h"

namespace freqguard {
namespace {

Dataset load_cifar(const std::filesystem::path& path, std::size_t record_bytes,
                   std::size_t label_offset, std::size_t num_classes, const std::string& name) {
  const std::string bytes = read_file(path);
  if (bytes.size() % record_bytes != 0) {
    const std::size_t offset = bytes.size() - bytes.size() % record_bytes;
    fail(ErrorKind::kFormat, path.string() + ": truncated record at byte offset " +
                                 std::to_string(offset) + " (record size " +
                                 std::to_string(record_bytes) + ", file size " +
                                 std::to_string(bytes.size()) + ")");
  }
  const std::size_t header = record_bytes - 3 * kCifarSide * kCifarSide;
  Dataset ds;
  ds.num_classes = num_classes;
  ds.name = name;
  const std::size_t n = bytes.size() / record_bytes;
  ds.images.reserve(n);
  ds.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t offset = i * record_bytes;
    const auto label = static_cast<unsigned char>(bytes[offset + label_offset]);
    require(label < num_classes, ErrorKind::kFormat,
            path.string() + ": label " + std::to_string(label) + " out of range at byte offset " +
                std::to_string(offset + label_offset));
    std::vector<double> values(3 * kCifarSide * kCifarSide);
    for (std::size_t k = 0; k < values.size(); ++k) {
      values[k] = static_cast<unsigned char>(bytes[offset + header + k]) / 255.0;
    }
    ds.images.emplace_back(kCifarSide, kCifarSide, std::move(values));
    ds.labels.push_back(label);
  }
  return ds;
}

}  // namespace

void validate(const Dataset& dataset) {
  require(dataset.images.size() == dataset.labels.size(), ErrorKind::kShape,
          "dataset: image and label counts differ");
  require(dataset.num_classes > 0 || dataset.empty(), ErrorKind::kInvalidInput,
          "dataset: num_classes must be positive");
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    require(dataset.labels[i] < dataset.num_classes, ErrorKind::kInvalidInput,
            "dataset: label out of range at index " + std::to_string(i));
    require(dataset.images[i].same_shape(dataset.images.front()), ErrorKind::kShape,
            "dataset: image " + std::to_string(i) + " differs in shape");
  }
}

bool operator==(const PoisonManifest& a, const PoisonManifest& b) {
  return a.target_class == b.target_class && a.poison_ratio == b.poison_ratio &&
         a.seed == b.seed && a.poisoned_indices == b.poisoned_indices &&
         to_json_value(a.attack) == to_json_value(b.attack);
}

Dataset load_cifar10(const std::filesystem::path& path) {
  return load_cifar(path, kCifar10RecordBytes, 0, 10, "cifar10");
}

Dataset load_cifar100(const std::filesystem::path& path, Cifar100Label label) {
  if (label == Cifar100Label::kCoarse) {
    return load_cifar(path, kCifar100RecordBytes, 0, 20, "cifar100-coarse");
  }
  return load_cifar(path, kCifar100RecordBytes, 1, 100, "cifar100");
}

Dataset gen_synthetic(std::size_t num_classes, std::size_t per_class, std::size_t side,
                      std::uint64_t seed) {
  require(num_classes >= 1, ErrorKind::kParameter, "gen_synthetic: num_classes must be >= 1");
  require(per_class >= 1, ErrorKind::kParameter, "gen_synthetic: per_class must be >= 1");
  require(side >= 8, ErrorKind::kParameter, "gen_synthetic: side must be >= 8");
  constexpr double kBackground = 0.25;
  constexpr double kNoise = 0.02;
  const double s = static_cast<double>(side);
  const double sigma = s / 6.0;

  Dataset ds;
  ds.num_classes = num_classes;
  ds.name = "synthetic";
  for (std::size_t cls = 0; cls < num_classes; ++cls) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(cls) /
                         static_cast<double>(num_classes);
    double color[3];
    for (std::size_t ch = 0; ch < 3; ++ch) {
      color[ch] = 0.5 + 0.4 * std::cos(angle + 2.0 * std::numbers::pi * ch / 3.0);
    }
    for (std::size_t k = 0; k < per_class; ++k) {
      Rng rng = make_rng(derive_seed(seed, "synthetic", cls, k));
      std::normal_distribution<double> noise(0.0, kNoise);
      const double cy = s / 2.0 + 0.25 * s * std::sin(angle) + uniform(rng, -s / 16, s / 16);
      const double cx = s / 2.0 + 0.25 * s * std::cos(angle) + uniform(rng, -s / 16, s / 16);
      const double gain = uniform(rng, 0.8, 1.2);
      Image image(side, side);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        for (std::size_t r = 0; r < side; ++r) {
          for (std::size_t c = 0; c < side; ++c) {
            const double dy = static_cast<double>(r) + 0.5 - cy;
            const double dx = static_cast<double>(c) + 0.5 - cx;
            const double blob = std::exp(-(dy * dy + dx * dx) / (2.0 * sigma * sigma));
            image(ch, r, c) =
                std::clamp(kBackground + 0.5 * gain * color[ch] * blob + noise(rng), 0.0, 1.0);
          }
        }
      }
      ds.images.push_back(std::move(image));
      ds.labels.push_back(cls);
    }
  }
  return ds;
}

std::size_t poison_count(std::size_t dataset_size, double ratio) {
  require(std::isfinite(ratio) && ratio >= 0.0 && ratio <= 1.0, ErrorKind::kParameter,
          "poison ratio must lie in [0, 1]");
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(dataset_size)));
}

std::pair<Dataset, PoisonManifest> poison_dataset(const Dataset& dataset,
                                                  const TriggerSpec& attack,
                                                  std::size_t target_class, double ratio,
                                                  std::uint64_t seed) {
  validate(dataset);
  validate(attack);
  require(target_class < dataset.num_classes, ErrorKind::kParameter,
          "target class " + std::to_string(target_class) + " does not exist");
  const std::size_t count = poison_count(dataset.size(), ratio);

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.labels[i] == target_class) eligible.push_back(i);
  }
  require(count <= eligible.size(), ErrorKind::kCapacity,
          "poisoning " + std::to_string(count) + " samples needs more than the " +
              std::to_string(eligible.size()) + " samples of class " +
              std::to_string(target_class));

  // Partial Fisher-Yates: the first `count` entries are a uniform sample.
  Rng rng = make_rng(derive_seed(seed, "poison.select"));
  for (std::size_t i = 0; i < count; ++i) {
    const auto last = static_cast<std::int64_t>(eligible.size() - i - 1);
    const std::size_t j = i + static_cast<std::size_t>(uniform_int(rng, 0, last));
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(count);
  std::sort(eligible.begin(), eligible.end());

  Dataset poisoned = dataset;
  for (std::size_t index : eligible) {
    poisoned.images[index] =
        poison(dataset.images[index], attack, derive_seed(seed, "poison.sample", index));
  }
  PoisonManifest manifest{attack, target_class, ratio, seed, std::move(eligible)};
  return {std::move(poisoned), std::move(manifest)};
}

void export_dataset(const Dataset& dataset, const std::optional<PoisonManifest>& manifest,
                    const std::filesystem::path& out_dir) {
  validate(dataset);
  const std::size_t h = dataset.empty() ? 0 : dataset.images.front().height();
  const std::size_t w = dataset.empty() ? 0 : dataset.images.front().width();
  std::vector<double> flat;
  flat.reserve(dataset.size() * Image::kChannels * h * w);
  for (const Image& image : dataset.images) {
    require(image.colorspace() == Colorspace::kRgb, ErrorKind::kColorspace,
            "export_dataset: images must be RGB");
    flat.insert(flat.end(), image.values().begin(), image.values().end());
  }
  Json meta = {{"shape", {dataset.size(), Image::kChannels, h, w}},
               {"dtype", "float64-le"},
               {"labels", dataset.labels},
               {"num_classes", dataset.num_classes},
               {"name", dataset.name},
               {"manifest", manifest ? to_json_value(*manifest) : Json(nullptr)}};
  std::filesystem::create_directories(out_dir);
  write_file_atomic(out_dir / kTensorFile, encode_f64_le(flat));
  write_file_atomic(out_dir / kMetaFile, meta.dump(2) + "\n");
}

std::pair<Dataset, std::optional<PoisonManifest>> import_dataset(
    const std::filesystem::path& dir) {
  require(std::filesystem::exists(dir / kMetaFile), ErrorKind::kFormat,
          (dir / kMetaFile).string() + ": missing sidecar");
  const Json meta = parse_json(read_file(dir / kMetaFile), (dir / kMetaFile).string());
  Dataset ds;
  std::vector<std::size_t> shape;
  std::optional<PoisonManifest> manifest;
  try {
    shape = meta.at("shape").get<std::vector<std::size_t>>();
    ds.labels = meta.at("labels").get<std::vector<std::size_t>>();
    ds.num_classes = meta.at("num_classes").get<std::size_t>();
    ds.name = meta.value("name", "");
    if (meta.contains("manifest") && !meta.at("manifest").is_null()) {
      manifest = manifest_from_json(meta.at("manifest"));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string("meta.json: ") + e.what());
  }
  require(shape.size() == 4 && shape[1] == Image::kChannels, ErrorKind::kFormat,
          "meta.json: shape must be [N, 3, H, W]");
  require(ds.labels.size() == shape[0], ErrorKind::kFormat,
          "meta.json: label count differs from shape");
  const std::vector<double> flat = decode_f64_le(read_file(dir / kTensorFile));
  const std::size_t per_image = shape[1] * shape[2] * shape[3];
  require(flat.size() == shape[0] * per_image, ErrorKind::kFormat,
          "data.f64 holds " + std::to_string(flat.size()) + " values but meta.json declares " +
              std::to_string(shape[0] * per_image));
  require(shape[0] == 0 || per_image > 0, ErrorKind::kFormat, "meta.json: empty image shape");
  for (std::size_t i = 0; i < shape[0]; ++i) {
    const auto begin = flat.begin() + static_cast<std::ptrdiff_t>(i * per_image);
    ds.images.emplace_back(shape[2], shape[3],
                           std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(per_image)));
  }
  try {
    validate(ds);
  } catch (const Error& e) {
    fail(ErrorKind::kFormat, std::string("meta.json: ") + e.what());
  }
  if (manifest) {
    for (std::size_t index : manifest->poisoned_indices) {
      require(index < ds.size(), ErrorKind::kFormat, "manifest index out of range");
    }
  }
  return {std::move(ds), std::move(manifest)};
}

}  // namespace freqguard
