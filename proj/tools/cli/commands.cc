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

#include "commands.h"

#include <cstdio>
#include <filesystem>

#include "freqguard/analysis.h"
#include "freqguard/io.h"
#include "freqguard/seed.h"
#include "freqguard/transforms.h"

namespace freqguard::cli {
namespace {

namespace fs = std::filesystem;

fs::path out_dir(const Json& config) {
  const auto out = config.at("out").get<std::string>();
  if (out.empty()) throw UsageError("--out must not be empty");
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_loss_csv(const fs::path& path, const std::vector<double>& trace) {
  std::string csv = "epoch,loss\n";
  for (std::size_t e = 0; e < trace.size(); ++e) {
    csv += std::to_string(e) + "," + format_double(trace[e]) + "\n";
  }
  write_file_atomic(path, csv);
}

std::string pca_csv(const EmbeddingSet& set, std::size_t dims) {
  const PcaResult pca = pca_project(set, dims);
  std::string csv = "index,label,poisoned";
  for (std::size_t d = 1; d <= dims; ++d) csv += ",c" + std::to_string(d);
  csv += "\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    csv += std::to_string(i) + "," + std::to_string(set.labels[i]) + "," +
           (set.poisoned[i] ? "1" : "0");
    for (std::size_t d = 0; d < dims; ++d) csv += "," + format_double(pca.coordinates(i, d));
    csv += "\n";
  }
  return csv;
}

std::size_t pca_dims(const Json& config) {
  const auto dims = config.at("eval").at("pca_dims").get<std::int64_t>();
  if (dims < 1) throw UsageError("eval.pca_dims must be >= 1");
  return static_cast<std::size_t>(dims);
}

Json manifest_summary(const Dataset& dataset, const std::optional<PoisonManifest>& manifest) {
  Json j = {{"n", dataset.size()}, {"num_classes", dataset.num_classes}};
  if (manifest) {
    j["attack"] = to_json_value(manifest->attack).at("type");
    j["target_class"] = manifest->target_class;
    j["poison_ratio"] = manifest->poison_ratio;
    j["n_poisoned"] = manifest->poisoned_indices.size();
    j["poisoned_indices"] = manifest->poisoned_indices;
  } else {
    j["n_poisoned"] = 0;
  }
  return j;
}

struct Trained {
  EncoderParams encoder;
  std::vector<double> loss_trace;
};

Trained train_from_config(const Json& config, const Dataset& train) {
  TrainResult r = train_encoder(train, augment_config(config), train_config(config));
  return {std::move(r.params), std::move(r.loss_trace)};
}

Dataset input_dataset(const Json& config, std::optional<PoisonManifest>& manifest) {
  const auto input = config.at("input").get<std::string>();
  if (input.empty()) throw UsageError("this command needs --input <dataset dir>");
  auto [dataset, m] = import_dataset(input);
  manifest = std::move(m);
  return std::move(dataset);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string cmd_poison(const Json& config) {
  const fs::path out = out_dir(config);
  auto [dataset, manifest] = training_data(config);
  export_dataset(dataset, manifest, out);
  if (manifest) write_file_atomic(out / "manifest.json", dump(to_json_value(*manifest)));
  return dump(manifest_summary(dataset, manifest));
}

std::string cmd_defend(const Json& config) {
  const fs::path out = out_dir(config);
  std::optional<PoisonManifest> manifest;
  Dataset dataset = input_dataset(config, manifest);
  const Json& d = config.at("defense");
  const auto kind = d.at("kind").get<std::string>();
  const std::uint64_t seed = global_seed(config);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    Image& image = dataset.images[i];
    if (kind == "blur") {
      const double sigma = d.at("sigma").get<double>();
      const std::size_t side = std::min(image.height(), image.width());
      std::size_t size = gaussian_kernel_size(sigma);
      if (size > side) size = side % 2 == 1 ? side : side - 1;
      image = gaussian_blur(image, sigma, size);
    } else if (kind == "freq_patch") {
      if (d.at("random_patch").get<bool>()) {
        AugmentConfig aug = AugmentConfig::identity();
        aug.freq_patch = augment_config(config).freq_patch;
        aug.freq_patch.probability = 1.0;
        image = freq_patch(image, aug, derive_seed(seed, "defend.freq_patch", i));
      } else {
        const PatchRect rect{d.at("patch_row").get<std::size_t>(),
                             d.at("patch_col").get<std::size_t>(),
                             d.at("patch_height").get<std::size_t>(),
                             d.at("patch_width").get<std::size_t>()};
        image = apply_freq_mask(image,
                                FreqMask::with_patch(image.height(), image.width(), rect));
      }
    } else if (kind == "luma") {
      image = luma_view(image);
    } else {
      throw UsageError("defense.kind must be blur, freq_patch or luma");
    }
  }
  export_dataset(dataset, manifest, out);
  return dump({{"defense", kind}, {"n", dataset.size()}});
}

std::string cmd_analyze(const Json& config) {
  const fs::path out = out_dir(config);
  Dataset dataset;
  if (config.at("input").get<std::string>().empty()) {
    dataset = load_train_split(config);
  } else {
    std::optional<PoisonManifest> unused;
    dataset = input_dataset(config, unused);
  }
  const auto wanted = config.at("analysis").at("n_images").get<std::int64_t>();
  if (wanted < 2) throw UsageError("analysis.n_images must be >= 2");
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(wanted), dataset.size());
  require(n >= 2, ErrorKind::kContract, "analyze needs at least 2 images");
  std::vector<Image> images(dataset.images.begin(),
                            dataset.images.begin() + static_cast<std::ptrdiff_t>(n));
  const std::size_t side = images.front().height();
  const TriggerSpec attack = resolve_attack(config, side);
  const std::uint64_t seed = global_seed(config);

  Json report = {{"n_images", n}, {"attack", to_json_value(attack).at("type")}};
  if (const auto* ctrl = std::get_if<CtrlTrigger>(&attack)) {
    report["blur_identity_deviation"] =
        blur_identity_check(images, *ctrl, config.at("analysis").at("sigma").get<double>());
  } else {
    report["blur_identity_deviation"] = nullptr;
  }

  std::vector<Residual> residuals;
  for (std::size_t i = 0; i < n; ++i) {
    residuals.push_back(
        residual(images[i], poison(images[i], attack, derive_seed(seed, "analyze.poison", i))));
  }
  const ResidualStats stats = residual_stats(residuals);
  report["residual"] = {{"total_variance", stats.total_variance}, {"energy", stats.energy}};

  if (n >= 10) {
    const AmplificationReport amp =
        variance_amplification(images, attack, augment_config(config).blur,
                               derive_seed(seed, "analyze.amplification"));
    report["amplification"] = {{"blurred_variance", amp.blurred_variance},
                               {"raw_variance", amp.raw_variance},
                               {"ratio", amp.ratio}};
  } else {
    report["amplification"] = nullptr;
  }

  const Json& d = config.at("defense");
  const FreqMask mask = FreqMask::with_patch(
      images.front().height(), images.front().width(),
      PatchRect{d.at("patch_row").get<std::size_t>(), d.at("patch_col").get<std::size_t>(),
                d.at("patch_height").get<std::size_t>(), d.at("patch_width").get<std::size_t>()});
  double sum = 0.0;
  double worst = 0.0;
  for (const Image& image : images) {
    const double e = compaction_error(image, mask);
    sum += e;
    worst = std::max(worst, e);
  }
  report["compaction_error"] = {{"mean", sum / static_cast<double>(n)}, {"max", worst}};

  const std::string text = dump(report);
  fs::create_directories(out);
  write_file_atomic(out / "analysis.json", text);
  return text;
}

std::string cmd_train(const Json& config) {
  const fs::path out = out_dir(config);
  auto [dataset, manifest] = training_data(config);
  const Trained t = train_from_config(config, dataset);
  export_encoder(t.encoder, out / "encoder");
  write_loss_csv(out / "loss.csv", t.loss_trace);
  Json summary = manifest_summary(dataset, manifest);
  summary.erase("poisoned_indices");
  summary["epochs"] = t.loss_trace.size();
  summary["final_loss"] = t.loss_trace.empty() ? Json(nullptr) : Json(t.loss_trace.back());
  return dump(summary);
}

std::string cmd_eval(const Json& config) {
  const fs::path out = out_dir(config);
  auto [train, manifest] = training_data(config);
  require(!train.empty(), ErrorKind::kContract, "training split is empty");
  const auto encoder_dir = config.at("encoder").get<std::string>();
  std::optional<Trained> trained;
  EncoderParams encoder = encoder_dir.empty()
                              ? (trained = train_from_config(config, train))->encoder
                              : import_encoder(encoder_dir);

  const Dataset test = load_test_split(config);
  const TriggerSpec attack =
      manifest ? manifest->attack : resolve_attack(config, train.images.front().height());
  const std::size_t target = manifest ? manifest->target_class
                                      : config.at("attack").at("target_class").get<std::size_t>();
  const BackdoorEvaluation ev =
      evaluate_backdoor(encoder, train, manifest, test, attack, target,
                        derive_seed(global_seed(config), "eval"), eval_settings(config));

  const MetricsReport& m = ev.metrics;
  const Json metrics = {{"acc", m.acc},
                        {"asr", m.asr},
                        {"asr_including_target", m.asr_including_target},
                        {"n_eval", m.n_eval},
                        {"n_poison_eval", m.n_poison_eval},
                        {"per_class_correct", m.per_class_correct},
                        {"config_digest", config_digest(config)}};
  const std::string csv = pca_csv(ev.bank, pca_dims(config));

  if (trained) {
    export_encoder(trained->encoder, out / "encoder");
    write_loss_csv(out / "loss.csv", trained->loss_trace);
  }
  fs::create_directories(out);
  write_file_atomic(out / "pca.csv", csv);
  const std::string text = dump(metrics);
  write_file_atomic(out / "metrics.json", text);
  return text;
}

std::string cmd_project(const Json& config) {
  const fs::path out = out_dir(config);
  const auto encoder_dir = config.at("encoder").get<std::string>();
  if (encoder_dir.empty()) throw UsageError("project needs --encoder <dir>");
  const EncoderParams encoder = import_encoder(encoder_dir);
  auto [dataset, manifest] = training_data(config);
  const EmbeddingSet set =
      embed_dataset(encoder, dataset, eval_settings(config).transform, manifest);
  const std::size_t dims = pca_dims(config);
  fs::create_directories(out);
  write_file_atomic(out / "pca.csv", pca_csv(set, dims));
  return dump({{"n", set.size()}, {"dims", dims}});
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"poison", "defend",  "analyze",
                                                 "train",  "eval",    "project"};
  return names;
}

int run_command(const std::string& name, const Json& config, std::ostream& out,
                std::ostream& err) {
  try {
    std::string text;
    if (name == "poison") {
      text = cmd_poison(config);
    } else if (name == "defend") {
      text = cmd_defend(config);
    } else if (name == "analyze") {
      text = cmd_analyze(config);
    } else if (name == "train") {
      text = cmd_train(config);
    } else if (name == "eval") {
      text = cmd_eval(config);
    } else if (name == "project") {
      text = cmd_project(config);
    } else {
      throw UsageError("unknown command '" + name + "'");
    }
    out << text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::kFormat ? kExitFormat : kExitOther;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace freqguard::cli
