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

#include "freqguard/serialization.h"

#include <set>
#include <string>

namespace freqguard {
namespace {

// Reads optional keys from one JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string what) : j_(j), what_(std::move(what)) {
    require(j_.is_object(), ErrorKind::kFormat, what_ + ": expected a JSON object");
  }

  template <typename T>
  bool get(const std::string& key, T& out) {
    if (!j_.contains(key)) return false;
    seen_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorKind::kFormat, what_ + "." + key + ": wrong type");
    }
    return true;
  }

  const Json* child(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  const Json& required(const std::string& key) {
    const Json* c = child(key);
    require(c != nullptr, ErrorKind::kFormat, what_ + ": missing key '" + key + "'");
    return *c;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      require(seen_.count(item.key()) == 1, ErrorKind::kFormat,
              what_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  const Json& j_;
  std::string what_;
  std::set<std::string> seen_;
};

Colorspace colorspace_from_name(const std::string& name) {
  if (name == "rgb") return Colorspace::kRgb;
  if (name == "yuv") return Colorspace::kYuv;
  fail(ErrorKind::kFormat, "unknown colorspace '" + name + "'");
}

SpectralTransform transform_from_name(const std::string& name) {
  if (name == "dct") return SpectralTransform::kDct;
  if (name == "fft") return SpectralTransform::kFft;
  fail(ErrorKind::kFormat, "unknown transform '" + name + "'");
}

}  // namespace

std::string_view spectral_transform_name(SpectralTransform t) {
  return t == SpectralTransform::kDct ? "dct" : "fft";
}

std::string_view architecture_name(Architecture a) {
  return a == Architecture::kLinear ? "linear" : "mlp";
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string(what) + ": " + e.what());
  }
}

Json to_json_value(const Image& image) {
  return {{"height", image.height()},
          {"width", image.width()},
          {"colorspace", image.colorspace() == Colorspace::kRgb ? "rgb" : "yuv"},
          {"values", std::vector<double>(image.values().begin(), image.values().end())}};
}

Image image_from_json(const Json& j) {
  ObjectReader r(j, "image");
  std::size_t height = 0;
  std::size_t width = 0;
  std::string colorspace = "rgb";
  std::vector<double> values;
  require(r.get("height", height) && r.get("width", width) && r.get("values", values),
          ErrorKind::kFormat, "image: height, width and values are required");
  r.get("colorspace", colorspace);
  r.finish();
  require(height > 0 && width > 0 && values.size() == Image::kChannels * height * width,
          ErrorKind::kFormat, "image: values do not match 3 x height x width");
  return Image(height, width, std::move(values), colorspace_from_name(colorspace));
}

Json to_json_value(const TriggerSpec& spec) {
  if (const auto* ctrl = std::get_if<CtrlTrigger>(&spec)) {
    return {{"type", "ctrl"},
            {"magnitude", ctrl->magnitude},
            {"transform", spectral_transform_name(ctrl->transform)},
            {"poison_u", ctrl->poison_u},
            {"poison_v", ctrl->poison_v}};
  }
  if (const auto* fiba = std::get_if<FibaTrigger>(&spec)) {
    return {{"type", "fiba"},
            {"alpha", fiba->alpha},
            {"beta", fiba->beta},
            {"trigger_image", to_json_value(fiba->trigger_image)}};
  }
  const auto& htba = std::get<HtbaTrigger>(spec);
  Json j = {{"type", "htba"}, {"patch", to_json_value(htba.patch)}};
  if (htba.position) j["position"] = {htba.position->first, htba.position->second};
  return j;
}

TriggerSpec trigger_from_json(const Json& j) {
  ObjectReader r(j, "attack");
  std::string type;
  require(r.get("type", type), ErrorKind::kFormat, "attack: missing key 'type'");
  TriggerSpec spec;
  if (type == "ctrl") {
    CtrlTrigger t;
    double magnitude_255 = 0.0;
    const bool has_unit = r.get("magnitude", t.magnitude);
    if (r.get("magnitude_255", magnitude_255)) {
      require(!has_unit, ErrorKind::kFormat,
              "attack: give either magnitude or magnitude_255, not both");
      t.magnitude = magnitude_255 / 255.0;
    }
    std::string transform = "dct";
    r.get("transform", transform);
    t.transform = transform_from_name(transform);
    r.get("poison_u", t.poison_u);
    r.get("poison_v", t.poison_v);
    spec = t;
  } else if (type == "fiba") {
    FibaTrigger t{image_from_json(r.required("trigger_image"))};
    r.get("alpha", t.alpha);
    r.get("beta", t.beta);
    spec = std::move(t);
  } else if (type == "htba") {
    HtbaTrigger t{image_from_json(r.required("patch")), std::nullopt};
    std::vector<std::size_t> position;
    if (r.get("position", position)) {
      require(position.size() == 2, ErrorKind::kFormat, "attack: position must be [row, col]");
      t.position = std::make_pair(position[0], position[1]);
    }
    spec = std::move(t);
  } else {
    fail(ErrorKind::kFormat, "attack: unknown type '" + type + "'");
  }
  r.finish();
  return spec;
}

Json to_json_value(const PoisonManifest& manifest) {
  return {{"attack", to_json_value(manifest.attack)},
          {"target_class", manifest.target_class},
          {"poison_ratio", manifest.poison_ratio},
          {"seed", manifest.seed},
          {"poisoned_indices", manifest.poisoned_indices}};
}

PoisonManifest manifest_from_json(const Json& j) {
  ObjectReader r(j, "manifest");
  PoisonManifest m;
  m.attack = trigger_from_json(r.required("attack"));
  require(r.get("target_class", m.target_class) && r.get("poison_ratio", m.poison_ratio) &&
              r.get("seed", m.seed) && r.get("poisoned_indices", m.poisoned_indices),
          ErrorKind::kFormat, "manifest: incomplete");
  r.finish();
  for (std::size_t i = 1; i < m.poisoned_indices.size(); ++i) {
    require(m.poisoned_indices[i - 1] < m.poisoned_indices[i], ErrorKind::kFormat,
            "manifest: poisoned_indices must be sorted and unique");
  }
  return m;
}

Json to_json_value(const AugmentConfig& c) {
  return {{"crop",
           {{"probability", c.crop.probability},
            {"scale_min", c.crop.scale_min},
            {"scale_max", c.crop.scale_max}}},
          {"flip_probability", c.flip_probability},
          {"jitter", {{"probability", c.jitter.probability}, {"strength", c.jitter.strength}}},
          {"grayscale_probability", c.grayscale_probability},
          {"blur",
           {{"probability", c.blur.probability},
            {"sigma_min", c.blur.sigma_min},
            {"sigma_max", c.blur.sigma_max}}},
          {"freq_patch",
           {{"probability", c.freq_patch.probability},
            {"side_min", c.freq_patch.side_min},
            {"side_max", c.freq_patch.side_max}}}};
}

AugmentConfig augment_from_json(const Json& j) {
  ObjectReader r(j, "augment");
  AugmentConfig c;
  if (const Json* crop = r.child("crop")) {
    ObjectReader s(*crop, "augment.crop");
    s.get("probability", c.crop.probability);
    s.get("scale_min", c.crop.scale_min);
    s.get("scale_max", c.crop.scale_max);
    s.finish();
  }
  r.get("flip_probability", c.flip_probability);
  if (const Json* jitter = r.child("jitter")) {
    ObjectReader s(*jitter, "augment.jitter");
    s.get("probability", c.jitter.probability);
    s.get("strength", c.jitter.strength);
    s.finish();
  }
  r.get("grayscale_probability", c.grayscale_probability);
  if (const Json* blur = r.child("blur")) {
    ObjectReader s(*blur, "augment.blur");
    s.get("probability", c.blur.probability);
    s.get("sigma_min", c.blur.sigma_min);
    s.get("sigma_max", c.blur.sigma_max);
    s.finish();
  }
  if (const Json* patch = r.child("freq_patch")) {
    ObjectReader s(*patch, "augment.freq_patch");
    s.get("probability", c.freq_patch.probability);
    s.get("side_min", c.freq_patch.side_min);
    s.get("side_max", c.freq_patch.side_max);
    s.finish();
  }
  r.finish();
  return c;
}

Json to_json_value(const TrainConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"momentum", c.momentum},
          {"weight_decay", c.weight_decay},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"temperature", c.temperature},
          {"seed", c.seed},
          {"c_task", c.c_task},
          {"c_equi", c.c_equi},
          {"c_reg", c.c_reg},
          {"architecture", architecture_name(c.architecture)},
          {"embedding_dim", c.embedding_dim},
          {"hidden_dim", c.hidden_dim}};
}

TrainConfig train_config_from_json(const Json& j) {
  ObjectReader r(j, "train");
  TrainConfig c;
  r.get("learning_rate", c.learning_rate);
  r.get("momentum", c.momentum);
  r.get("weight_decay", c.weight_decay);
  r.get("epochs", c.epochs);
  r.get("batch_size", c.batch_size);
  r.get("temperature", c.temperature);
  r.get("seed", c.seed);
  r.get("c_task", c.c_task);
  r.get("c_equi", c.c_equi);
  r.get("c_reg", c.c_reg);
  std::string arch = "linear";
  r.get("architecture", arch);
  if (arch == "linear") {
    c.architecture = Architecture::kLinear;
  } else if (arch == "mlp") {
    c.architecture = Architecture::kMlp;
  } else {
    fail(ErrorKind::kFormat, "train: unknown architecture '" + arch + "'");
  }
  r.get("embedding_dim", c.embedding_dim);
  r.get("hidden_dim", c.hidden_dim);
  r.finish();
  return c;
}

}  // namespace freqguard
