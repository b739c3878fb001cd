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

#ifndef FREQGUARD_SERIALIZATION_H_
#define FREQGUARD_SERIALIZATION_H_

#include <nlohmann/json.hpp>

#include "freqguard/attacks.h"
#include "freqguard/data.h"
#include "freqguard/defenses.h"
#include "freqguard/trainer.h"

// JSON forms of the core value types. Readers start from defaults and
// override the keys that are present; unknown keys raise a format error.
namespace freqguard {

using Json = nlohmann::json;

Json to_json_value(const Image& image);
Image image_from_json(const Json& j);

// {"type": "ctrl"|"fiba"|"htba", ...}. CTRL accepts "magnitude" in [0, 1]
// units or "magnitude_255"; it is always written as "magnitude".
Json to_json_value(const TriggerSpec& spec);
TriggerSpec trigger_from_json(const Json& j);

Json to_json_value(const PoisonManifest& manifest);
PoisonManifest manifest_from_json(const Json& j);

Json to_json_value(const AugmentConfig& config);
AugmentConfig augment_from_json(const Json& j);

Json to_json_value(const TrainConfig& config);
TrainConfig train_config_from_json(const Json& j);

std::string_view spectral_transform_name(SpectralTransform t);
std::string_view architecture_name(Architecture a);

/// Parses text, mapping parse errors to ErrorKind::kFormat.
Json parse_json(std::string_view text, std::string_view what);

}  // namespace freqguard

#endif  // FREQGUARD_SERIALIZATION_H_
