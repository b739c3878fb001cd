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

#ifndef FREQGUARD_TOOLS_CLI_RUN_CONFIG_H_
#define FREQGUARD_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "freqguard/data.h"
#include "freqguard/defenses.h"
#include "freqguard/pipeline.h"
#include "freqguard/serialization.h"
#include "freqguard/trainer.h"

namespace freqguard::cli {

// Raised for bad flags, unknown config keys and type mismatches (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kDataRootEnv = "FREQGUARD_DATA_ROOT";

/// Every key the tool understands, with its default. Command-line flags are
/// generated from the leaves of this object ("--train.epochs", "--seed", ...).
Json default_config();

/// Dotted paths of all leaves of default_config(), in document order.
std::vector<std::string> config_keys();

/// Deep-merges `overrides` into `base`, rejecting unknown keys and values whose
/// JSON type differs from the default.
void merge_config(Json& base, const Json& overrides, const std::string& prefix = "");

/// Sets one dotted key from flag text. The text is parsed as JSON when
/// possible, otherwise taken as a string.
void set_flag(Json& config, const std::string& key, const std::string& text);

/// Loads --config (if any) over the defaults, then applies flag overrides.
Json build_config(const std::optional<std::filesystem::path>& config_file,
                  const std::map<std::string, std::string>& flags);

/// Hex FNV-1a digest of the config with "out" removed.
std::string config_digest(const Json& config);

// Typed views of the config. Seeds for each purpose derive from "seed".
std::uint64_t global_seed(const Json& config);
AugmentConfig augment_config(const Json& config);
TrainConfig train_config(const Json& config);
EvalSettings eval_settings(const Json& config);

/// Resolves a relative data path against $FREQGUARD_DATA_ROOT.
std::filesystem::path data_path(const std::string& path);

/// The training split named by data.source (clean).
Dataset load_train_split(const Json& config);
/// The test split: a fresh synthetic draw, or data.test_path for CIFAR.
Dataset load_test_split(const Json& config);

/// The configured trigger; FIBA/HTBA images are generated from the seed.
TriggerSpec resolve_attack(const Json& config, std::size_t side);

/// Training data: --input directory if given, else the configured source
/// poisoned per the config. The manifest is empty when nothing was poisoned.
std::pair<Dataset, std::optional<PoisonManifest>> training_data(const Json& config);

}  // namespace freqguard::cli

#endif  // FREQGUARD_TOOLS_CLI_RUN_CONFIG_H_
