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

#include "run_config.h"

#include <cstdio>
#include <cstdlib>

#include "freqguard/io.h"
#include "freqguard/seed.h"

namespace freqguard::cli {
namespace {

void collect_keys(const Json& node, const std::string& prefix, std::vector<std::string>& out) {
  for (const auto& item : node.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    if (item.value().is_object()) {
      collect_keys(item.value(), key, out);
    } else {
      out.push_back(key);
    }
  }
}

bool same_kind(const Json& expected, const Json& given) {
  if (expected.is_number_integer()) return given.is_number_integer();
  if (expected.is_number()) return given.is_number();
  return expected.type() == given.type();
}

Image seeded_image(std::size_t side, std::uint64_t seed, bool binary) {
  Rng rng = make_rng(seed);
  Image image(side, side);
  for (double& v : image.values()) {
    v = binary ? static_cast<double>(uniform_int(rng, 0, 1)) : uniform(rng, 0.0, 1.0);
  }
  return image;
}

}  // namespace

Json default_config() {
  Json train = to_json_value(TrainConfig{});
  train.erase("seed");  // derived from the global seed
  return {
      {"seed", 0},
      {"out", "out"},
      {"input", ""},
      {"encoder", ""},
      {"data",
       {{"source", "synthetic"},
        {"path", ""},
        {"test_path", ""},
        {"cifar100_label", "fine"},
        {"num_classes", 3},
        {"per_class", 200},
        {"test_per_class", 100},
        {"side", 16}}},
      {"attack",
       {{"type", "ctrl"},
        {"target_class", 0},
        {"poison_ratio", 0.05},
        {"ctrl",
         {{"magnitude_255", 100.0}, {"transform", "dct"}, {"poison_u", true}, {"poison_v", true}}},
        {"fiba", {{"alpha", 0.15}, {"beta", 0.1}}},
        {"htba", {{"patch_size", 4}, {"row", -1}, {"col", -1}}}}},
      {"augment", to_json_value(AugmentConfig{})},
      {"train", train},
      {"eval", {{"k", 0}, {"metric", "cosine"}, {"inference_transform", "none"}, {"pca_dims", 2}}},
      {"defense",
       {{"kind", "blur"},
        {"sigma", 1.0},
        {"random_patch", false},
        {"patch_row", 1},
        {"patch_col", 1},
        {"patch_height", 2},
        {"patch_width", 2}}},
      {"analysis", {{"n_images", 100}, {"sigma", 1.0}}},
  };
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  collect_keys(default_config(), "", keys);
  return keys;
}

void merge_config(Json& base, const Json& overrides, const std::string& prefix) {
  if (!overrides.is_object()) throw UsageError("config" + prefix + " must be a JSON object");
  for (const auto& item : overrides.items()) {
    const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
    if (!base.contains(item.key())) throw UsageError("unknown config key '" + key + "'");
    Json& slot = base[item.key()];
    if (slot.is_object()) {
      merge_config(slot, item.value(), key);
    } else if (!same_kind(slot, item.value())) {
      throw UsageError("config key '" + key + "' expects " + std::string(slot.type_name()) +
                       ", got " + item.value().type_name());
    } else {
      slot = item.value();
    }
  }
}

void set_flag(Json& config, const std::string& key, const std::string& text) {
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    value = text;
  }
  Json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t dot; (dot = rest.find('.')) != std::string::npos; rest = rest.substr(dot + 1)) {
    parts.push_back(rest.substr(0, dot));
  }
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = Json{{*it, patch}};
  // A string default accepts any text, e.g. --out 123.
  if (value.is_primitive() && !value.is_string()) {
    const Json* slot = &config;
    for (const auto& p : parts) {
      if (!slot->is_object() || !slot->contains(p)) break;
      slot = &slot->at(p);
    }
    if (slot->is_string()) {
      patch = Json(text);
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = Json{{*it, patch}};
    }
  }
  merge_config(config, patch);
}

Json build_config(const std::optional<std::filesystem::path>& config_file,
                  const std::map<std::string, std::string>& flags) {
  Json config = default_config();
  if (config_file) merge_config(config, parse_json(read_file(*config_file), config_file->string()));
  for (const auto& [key, text] : flags) set_flag(config, key, text);
  return config;
}

std::string config_digest(const Json& config) {
  Json canonical = config;
  canonical.erase("out");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical.dump())));
  return buf;
}

std::uint64_t global_seed(const Json& config) { return config.at("seed").get<std::uint64_t>(); }

AugmentConfig augment_config(const Json& config) { return augment_from_json(config.at("augment")); }

TrainConfig train_config(const Json& config) {
  TrainConfig cfg = train_config_from_json(config.at("train"));
  cfg.seed = derive_seed(global_seed(config), "train");
  return cfg;
}

EvalSettings eval_settings(const Json& config) {
  const Json& e = config.at("eval");
  EvalSettings s;
  s.k = e.at("k").get<std::size_t>();
  const auto metric = e.at("metric").get<std::string>();
  if (metric == "cosine") {
    s.metric = Metric::kCosine;
  } else if (metric == "euclidean") {
    s.metric = Metric::kEuclidean;
  } else {
    throw UsageError("eval.metric must be cosine or euclidean");
  }
  const auto transform = e.at("inference_transform").get<std::string>();
  if (transform == "none") {
    s.transform = InferenceTransform::kNone;
  } else if (transform == "luma") {
    s.transform = InferenceTransform::kLuma;
  } else {
    throw UsageError("eval.inference_transform must be none or luma");
  }
  return s;
}

std::filesystem::path data_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* root = std::getenv(kDataRootEnv); root != nullptr && *root != '\0') {
      return std::filesystem::path(root) / p;
    }
  }
  return p;
}

namespace {

Dataset load_source(const Json& data, const std::string& path) {
  const auto source = data.at("source").get<std::string>();
  if (path.empty()) throw UsageError("data." + source + " needs a file path");
  if (source == "cifar10") return load_cifar10(data_path(path));
  const auto label = data.at("cifar100_label").get<std::string>();
  if (label != "fine" && label != "coarse") {
    throw UsageError("data.cifar100_label must be fine or coarse");
  }
  return load_cifar100(data_path(path),
                       label == "fine" ? Cifar100Label::kFine : Cifar100Label::kCoarse);
}

void check_source(const Json& data) {
  const auto source = data.at("source").get<std::string>();
  if (source != "synthetic" && source != "cifar10" && source != "cifar100") {
    throw UsageError("data.source must be synthetic, cifar10 or cifar100");
  }
}

}  // namespace

Dataset load_train_split(const Json& config) {
  const Json& data = config.at("data");
  check_source(data);
  if (data.at("source") == "synthetic") {
    return gen_synthetic(data.at("num_classes").get<std::size_t>(),
                         data.at("per_class").get<std::size_t>(),
                         data.at("side").get<std::size_t>(),
                         derive_seed(global_seed(config), "data.train"));
  }
  return load_source(data, data.at("path").get<std::string>());
}

Dataset load_test_split(const Json& config) {
  const Json& data = config.at("data");
  check_source(data);
  if (data.at("source") == "synthetic") {
    return gen_synthetic(data.at("num_classes").get<std::size_t>(),
                         data.at("test_per_class").get<std::size_t>(),
                         data.at("side").get<std::size_t>(),
                         derive_seed(global_seed(config), "data.test"));
  }
  return load_source(data, data.at("test_path").get<std::string>());
}

TriggerSpec resolve_attack(const Json& config, std::size_t side) {
  const Json& a = config.at("attack");
  const auto type = a.at("type").get<std::string>();
  const std::uint64_t seed = global_seed(config);
  Json spec;
  if (type == "ctrl") {
    spec = a.at("ctrl");
  } else if (type == "fiba") {
    spec = a.at("fiba");
    spec["trigger_image"] = to_json_value(seeded_image(side, derive_seed(seed, "attack.fiba"), false));
  } else if (type == "htba") {
    const Json& h = a.at("htba");
    const auto patch_size = h.at("patch_size").get<std::int64_t>();
    if (patch_size < 1) throw UsageError("attack.htba.patch_size must be >= 1");
    spec["patch"] = to_json_value(seeded_image(static_cast<std::size_t>(patch_size),
                                               derive_seed(seed, "attack.htba"), true));
    const auto row = h.at("row").get<std::int64_t>();
    const auto col = h.at("col").get<std::int64_t>();
    if (row >= 0 && col >= 0) spec["position"] = {row, col};
  } else {
    throw UsageError("attack.type must be ctrl, fiba or htba");
  }
  spec["type"] = type;
  TriggerSpec resolved = trigger_from_json(spec);
  validate(resolved);
  return resolved;
}

std::pair<Dataset, std::optional<PoisonManifest>> training_data(const Json& config) {
  const auto input = config.at("input").get<std::string>();
  if (!input.empty()) return import_dataset(input);
  Dataset clean = load_train_split(config);
  require(!clean.empty(), ErrorKind::kInvalidInput, "training split is empty");
  const Json& a = config.at("attack");
  const TriggerSpec attack = resolve_attack(config, clean.images.front().height());
  auto [poisoned, manifest] =
      poison_dataset(clean, attack, a.at("target_class").get<std::size_t>(),
                     a.at("poison_ratio").get<double>(), derive_seed(global_seed(config), "poison"));
  return {std::move(poisoned), std::move(manifest)};
}

}  // namespace freqguard::cli
