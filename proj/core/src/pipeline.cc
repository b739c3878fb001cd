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

#include "freqguard/pipeline.h"

#include "freqguard/seed.h"

namespace freqguard {

Dataset trigger_all(const Dataset& dataset, const TriggerSpec& attack, std::uint64_t seed) {
  validate(attack);
  Dataset out = dataset;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.images[i] = poison(dataset.images[i], attack, derive_seed(seed, "eval.trigger", i));
  }
  return out;
}

BackdoorEvaluation evaluate_backdoor(const EncoderParams& encoder, const Dataset& train,
                                     const std::optional<PoisonManifest>& manifest,
                                     const Dataset& test, const TriggerSpec& attack,
                                     std::size_t target_class, std::uint64_t seed,
                                     const EvalSettings& settings) {
  validate(train);
  validate(test);
  require(!train.empty() && !test.empty(), ErrorKind::kContract,
          "evaluate_backdoor: empty train or test split");
  require(train.num_classes == test.num_classes, ErrorKind::kShape,
          "evaluate_backdoor: train and test disagree on num_classes");
  require(target_class < test.num_classes, ErrorKind::kParameter,
          "evaluate_backdoor: target class out of range");

  BackdoorEvaluation out;
  out.bank = embed_dataset(encoder, train, settings.transform, manifest);
  out.clean = embed_dataset(encoder, test, settings.transform);
  out.triggered = embed_dataset(encoder, trigger_all(test, attack, seed), settings.transform);
  out.triggered.poisoned.assign(test.size(), true);

  const std::size_t k = settings.k == 0 ? default_k(train.size()) : settings.k;
  const auto clean_pred = knn_classify(out.bank, out.clean.vectors, k, settings.metric);
  const auto trig_pred = knn_classify(out.bank, out.triggered.vectors, k, settings.metric);

  MetricsReport& m = out.metrics;
  m.acc = compute_acc(clean_pred, test.labels);
  m.asr = compute_asr(trig_pred, target_class, test.labels);
  m.asr_including_target = compute_asr_including_target(trig_pred, target_class);
  m.per_class_correct = per_class_correct(clean_pred, test.labels, test.num_classes);
  m.n_eval = test.size();
  m.n_poison_eval = 0;
  for (std::size_t label : test.labels) m.n_poison_eval += label != target_class;
  return out;
}

}  // namespace freqguard
