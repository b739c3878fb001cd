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

#include "freqguard/eval.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "freqguard/error.h"

namespace freqguard {
namespace {

std::vector<double> normalized(std::span<const double> v) {
  const double norm = std::sqrt(squared_norm(v));
  std::vector<double> out(v.begin(), v.end());
  if (norm > 0.0) {
    for (double& x : out) x /= norm;
  }
  return out;
}

}  // namespace

void validate(const EmbeddingSet& set) {
  require(set.labels.size() == set.size() && set.poisoned.size() == set.size(),
          ErrorKind::kShape, "embedding set: labels/flags count differs from vectors");
  for (double v : set.vectors.values()) {
    require(std::isfinite(v), ErrorKind::kInvalidInput,
            "embedding set contains non-finite values");
  }
}

std::vector<std::size_t> knn_classify(const EmbeddingSet& train, const Matrix& queries,
                                      std::size_t k, Metric metric) {
  require(train.size() > 0, ErrorKind::kContract, "knn_classify: empty training set");
  validate(train);
  require(k >= 1 && k <= train.size(), ErrorKind::kParameter,
          "knn_classify: k must lie in [1, N_train]");
  require(queries.rows() == 0 || queries.cols() == train.dim(), ErrorKind::kShape,
          "knn_classify: query dimension differs from training set");

  Matrix reference = train.vectors;
  if (metric == Metric::kCosine) {
    for (std::size_t i = 0; i < reference.rows(); ++i) {
      auto unit = normalized(train.vectors.row(i));
      std::copy(unit.begin(), unit.end(), reference.row(i).begin());
    }
  }
  const std::size_t num_classes =
      *std::max_element(train.labels.begin(), train.labels.end()) + 1;

  std::vector<std::size_t> predictions(queries.rows());
  std::vector<std::pair<double, std::size_t>> ranked(train.size());
  std::vector<std::size_t> votes(num_classes);
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    std::vector<double> query(queries.row(q).begin(), queries.row(q).end());
    if (metric == Metric::kCosine) query = normalized(query);
    for (std::size_t i = 0; i < train.size(); ++i) {
      const double d = metric == Metric::kCosine ? 1.0 - dot(query, reference.row(i))
                                                 : squared_distance(query, reference.row(i));
      ranked[i] = {d, train.labels[i]};
    }
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[ranked[i].second];
    // max_element returns the first maximum, i.e. the smallest class id.
    predictions[q] = static_cast<std::size_t>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
  }
  return predictions;
}

std::size_t default_k(std::size_t n_train) {
  const std::size_t tenth = (n_train + 9) / 10;
  return std::max<std::size_t>(1, std::min<std::size_t>(20, tenth));
}

double compute_acc(std::span<const std::size_t> predictions,
                   std::span<const std::size_t> labels) {
  require(predictions.size() == labels.size(), ErrorKind::kShape,
          "compute_acc: predictions and labels differ in length");
  require(!labels.empty(), ErrorKind::kContract, "compute_acc: nothing to score");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predictions[i] == labels[i];
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double compute_asr(std::span<const std::size_t> predictions, std::size_t target_class,
                   std::span<const std::size_t> true_labels) {
  require(predictions.size() == true_labels.size(), ErrorKind::kShape,
          "compute_asr: predictions and labels differ in length");
  std::size_t eligible = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (true_labels[i] == target_class) continue;
    ++eligible;
    hits += predictions[i] == target_class;
  }
  require(eligible > 0, ErrorKind::kContract,
          "compute_asr: no poisoned queries outside the target class");
  return static_cast<double>(hits) / static_cast<double>(eligible);
}

double compute_asr_including_target(std::span<const std::size_t> predictions,
                                    std::size_t target_class) {
  require(!predictions.empty(), ErrorKind::kContract, "compute_asr_including_target: no queries");
  const auto hits = std::count(predictions.begin(), predictions.end(), target_class);
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

std::vector<std::size_t> per_class_correct(std::span<const std::size_t> predictions,
                                           std::span<const std::size_t> labels,
                                           std::size_t num_classes) {
  require(predictions.size() == labels.size(), ErrorKind::kShape,
          "per_class_correct: length mismatch");
  std::vector<std::size_t> counts(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i] && labels[i] < num_classes) ++counts[labels[i]];
  }
  return counts;
}

PcaResult pca_project(const EmbeddingSet& embeddings, std::size_t dims) {
  const std::size_t n = embeddings.size();
  const std::size_t d = embeddings.dim();
  require(n >= 2, ErrorKind::kContract, "pca_project: need at least two embeddings");
  require(dims >= 1 && dims <= d, ErrorKind::kParameter,
          "pca_project: dims must lie in [1, d]");

  Eigen::MatrixXd data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          embeddings.vectors(i, j);
    }
  }
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  const Eigen::MatrixXd covariance =
      (centered.transpose() * centered) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  require(solver.info() == Eigen::Success, ErrorKind::kContract,
          "pca_project: eigendecomposition failed");

  // Eigen sorts ascending; walk from the largest.
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double scale = std::max(1.0, std::abs(values(static_cast<Eigen::Index>(d - 1))));

  PcaResult result{Matrix(n, dims), Matrix(dims, d), std::vector<double>(dims, 0.0)};
  for (std::size_t k = 0; k < dims; ++k) {
    const auto col = static_cast<Eigen::Index>(d - 1 - k);
    const double variance = values(col);
    if (variance <= 1e-12 * scale) continue;  // zero-padded component
    Eigen::VectorXd axis = vectors.col(col);
    Eigen::Index pivot = 0;
    axis.cwiseAbs().maxCoeff(&pivot);
    if (axis(pivot) < 0.0) axis = -axis;
    result.explained_variance[k] = variance;
    for (std::size_t j = 0; j < d; ++j) {
      result.components(k, j) = axis(static_cast<Eigen::Index>(j));
    }
    const Eigen::VectorXd projected = centered * axis;
    for (std::size_t i = 0; i < n; ++i) {
      result.coordinates(i, k) = projected(static_cast<Eigen::Index>(i));
    }
  }
  return result;
}

}  // namespace freqguard
