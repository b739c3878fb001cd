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

#ifndef FREQGUARD_EVAL_H_
#define FREQGUARD_EVAL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "freqguard/matrix.h"

namespace freqguard {

struct EmbeddingSet {
  Matrix vectors;  // N x d
  std::vector<std::size_t> labels;
  std::vector<bool> poisoned;
  bool unit_norm = false;

  std::size_t size() const { return vectors.rows(); }
  std::size_t dim() const { return vectors.cols(); }
};

void validate(const EmbeddingSet& set);

enum class Metric { kEuclidean, kCosine };

/// Exact k-nearest-neighbour majority vote. Neighbours are ranked by
/// (distance, label) so the result does not depend on training-set order;
/// vote ties go to the smallest class id. Cosine distance is computed on
/// unit-normalized copies.
std::vector<std::size_t> knn_classify(const EmbeddingSet& train, const Matrix& queries,
                                      std::size_t k, Metric metric);

/// min(20, ceil(n_train / 10)), at least 1.
std::size_t default_k(std::size_t n_train);

double compute_acc(std::span<const std::size_t> predictions,
                   std::span<const std::size_t> labels);

/// Fraction of poisoned queries whose true class is not the target that are
/// predicted as the target.
double compute_asr(std::span<const std::size_t> predictions, std::size_t target_class,
                   std::span<const std::size_t> true_labels);

/// Fraction of all triggered queries, target class included, predicted as the
/// target. Equals the target-class share (about 1/C) for a clean, accurate model.
double compute_asr_including_target(std::span<const std::size_t> predictions,
                                    std::size_t target_class);

struct MetricsReport {
  double acc = 0.0;
  double asr = 0.0;  // non-target queries only
  double asr_including_target = 0.0;
  std::vector<std::size_t> per_class_correct;
  std::size_t n_eval = 0;
  std::size_t n_poison_eval = 0;
};

std::vector<std::size_t> per_class_correct(std::span<const std::size_t> predictions,
                                           std::span<const std::size_t> labels,
                                           std::size_t num_classes);

struct PcaResult {
  Matrix coordinates;                    // N x dims
  Matrix components;                     // dims x d, rows are principal axes
  std::vector<double> explained_variance;  // descending
};

/// Mean-centered projection onto the top principal axes of the unbiased
/// sample covariance. Each axis is signed so its largest-magnitude entry is
/// positive. Axes with numerically zero variance are zero-filled.
PcaResult pca_project(const EmbeddingSet& embeddings, std::size_t dims);

}  // namespace freqguard

#endif  // FREQGUARD_EVAL_H_
