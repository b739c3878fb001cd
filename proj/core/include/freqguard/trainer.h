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

#ifndef FREQGUARD_TRAINER_H_
#define FREQGUARD_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "freqguard/data.h"
#include "freqguard/defenses.h"
#include "freqguard/eval.h"
#include "freqguard/image.h"
#include "freqguard/matrix.h"

namespace freqguard {

// f(x) = W x on flattened pixels.
struct LinearEncoder {
  Matrix weight;  // d_out x d_in
  friend bool operator==(const LinearEncoder&, const LinearEncoder&) = default;
};

// f(x) = W2 max(0, W1 x + b1) + b2.
struct MlpEncoder {
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;
  friend bool operator==(const MlpEncoder&, const MlpEncoder&) = default;
};

using EncoderParams = std::variant<LinearEncoder, MlpEncoder>;

std::size_t input_dim(const EncoderParams& params);
std::size_t output_dim(const EncoderParams& params);

// Seeded uniform initialization in +-1/sqrt(fan_in).
LinearEncoder init_linear(std::size_t input_dim, std::size_t output_dim, std::uint64_t seed);
MlpEncoder init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                    std::uint64_t seed);

std::vector<double> encode(const EncoderParams& params, std::span<const double> input);

EncoderParams zeros_like(const EncoderParams& params);
// Every trainable tensor, in a fixed order.
std::vector<std::span<double>> parameter_spans(EncoderParams& params);
std::vector<std::span<const double>> parameter_spans(const EncoderParams& params);
double squared_norm(const EncoderParams& params);

/// Adds d(<grad_output, f(input)>)/d(theta) into `grad`.
void accumulate_gradient(const EncoderParams& params, std::span<const double> input,
                         std::span<const double> grad_output, EncoderParams& grad);

struct NtXentResult {
  double loss = 0.0;
  Matrix grad_a;
  Matrix grad_b;
};

/// NT-Xent over the 2N embeddings of two view batches: row i of `a` and row i
/// of `b` are positives, every other row is a negative. Embeddings are
/// unit-normalized internally and the loss is the mean over all 2N anchors.
/// Gradients are with respect to the raw (unnormalized) embeddings.
NtXentResult ntxent_loss(const Matrix& a, const Matrix& b, double temperature);

// A transform acting on inputs and, optionally, on encoder outputs.
struct PairedTransform {
  std::string name;
  std::function<Image(const Image&)> input_action;
  std::function<std::vector<double>(std::span<const double>)> output_action;
  std::function<std::vector<double>(std::span<const double>)> output_inverse;
};

/// Spatial transform whose output action reinterprets an embedding of size
/// 3*H*W as an image. Embeddings of any other size raise kContract.
PairedTransform spatial_transform(std::string name, std::size_t height, std::size_t width,
                                  std::function<Image(const Image&)> forward,
                                  std::function<Image(const Image&)> inverse = {});
/// Transform with no output action; admissible only for invariance terms.
PairedTransform invariance_transform(std::string name,
                                     std::function<Image(const Image&)> forward);

enum class EquiForm {
  kForward,  // sum d(f(g x), g f(x))
  kInverse,  // sum d(g^-1 f(g x), f(x))
};

/// Equivariance loss with squared-L2 distance on raw encoder outputs.
double equi_loss(const EncoderParams& encoder, const Image& image,
                 std::span<const PairedTransform> transforms,
                 EquiForm form = EquiForm::kForward);
/// Invariance loss: sum over g of ||f(x) - f(g x)||^2.
double aug_invariance_loss(const EncoderParams& encoder, const Image& image,
                           std::span<const PairedTransform> transforms);
/// Equivariance over g_equi plus invariance over g_inv.
double aug_loss(const EncoderParams& encoder, const Image& image,
                std::span<const PairedTransform> g_equi,
                std::span<const PairedTransform> g_inv);

enum class Architecture { kLinear, kMlp };

struct TrainConfig {
  double learning_rate = 0.06;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  double temperature = 0.5;
  std::uint64_t seed = 0;
  // Objective: c_task * NT-Xent + c_equi * invariance term + c_reg * |theta|^2 / 2.
  double c_task = 1.0;
  double c_equi = 0.0;
  double c_reg = 0.0;
  Architecture architecture = Architecture::kLinear;
  std::size_t embedding_dim = 64;
  std::size_t hidden_dim = 128;
};

void validate(const TrainConfig& config);

EncoderParams init_encoder(const TrainConfig& config, std::size_t input_dim);

// SGD with heavy-ball momentum and L2 weight decay folded into the gradient:
// v <- mu v + (g + wd theta); theta <- theta - lr v.
class SgdMomentum {
 public:
  SgdMomentum(double learning_rate, double momentum, double weight_decay)
      : learning_rate_(learning_rate), momentum_(momentum), weight_decay_(weight_decay) {}

  void step(EncoderParams& params, const EncoderParams& grads);

 private:
  double learning_rate_;
  double momentum_;
  double weight_decay_;
  std::optional<EncoderParams> velocity_;
};

struct TrainResult {
  EncoderParams params;
  std::vector<double> loss_trace;  // mean NT-Xent loss per epoch
};

/// Contrastive training on flattened pixels. Deterministic given the config
/// seed; the views of sample i in epoch e use a seed derived from (e, i).
/// Starts from `initial` when given.
TrainResult train_encoder(const Dataset& dataset, const AugmentConfig& augment,
                          const TrainConfig& config,
                          std::optional<EncoderParams> initial = std::nullopt);

enum class InferenceTransform { kNone, kLuma };

std::vector<double> flatten(const Image& image);

/// Encodes every image (after the optional luma view) and unit-normalizes.
/// Zero embeddings stay zero.
EmbeddingSet embed_dataset(const EncoderParams& encoder, const Dataset& dataset,
                           InferenceTransform transform,
                           const std::optional<PoisonManifest>& manifest = std::nullopt);

// `encoder.f64` raw little-endian tensors + `encoder.json` shapes.
void export_encoder(const EncoderParams& params, const std::filesystem::path& out_dir);
EncoderParams import_encoder(const std::filesystem::path& dir);

}  // namespace freqguard

#endif  // FREQGUARD_TRAINER_H_
