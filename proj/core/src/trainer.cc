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

#include "freqguard/trainer.h"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <string>

#include "freqguard/io.h"
#include "freqguard/seed.h"

namespace freqguard {
namespace {

Matrix uniform_matrix(std::size_t rows, std::size_t cols, double bound, Rng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = uniform(rng, -bound, bound);
  return m;
}

void matvec(const Matrix& w, std::span<const double> x, std::span<double> out) {
  for (std::size_t r = 0; r < w.rows(); ++r) out[r] = dot(w.row(r), x);
}

void add_outer(Matrix& grad, std::span<const double> left, std::span<const double> right) {
  for (std::size_t r = 0; r < grad.rows(); ++r) {
    const double l = left[r];
    if (l == 0.0) continue;
    auto row = grad.row(r);
    for (std::size_t c = 0; c < grad.cols(); ++c) row[c] += l * right[c];
  }
}

std::vector<double> relu_pre(const MlpEncoder& mlp, std::span<const double> input) {
  std::vector<double> pre(mlp.w1.rows());
  matvec(mlp.w1, input, pre);
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] += mlp.b1[i];
  return pre;
}

void require_input(const EncoderParams& params, std::span<const double> input) {
  require(input.size() == input_dim(params), ErrorKind::kShape,
          "encoder expects input of size " + std::to_string(input_dim(params)) +
              ", got " + std::to_string(input.size()));
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double squared_gap(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::kShape, "distance between vectors of different size");
  return squared_distance(a, b);
}

}  // namespace

std::size_t input_dim(const EncoderParams& params) {
  return std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LinearEncoder>) {
          return p.weight.cols();
        } else {
          return p.w1.cols();
        }
      },
      params);
}

std::size_t output_dim(const EncoderParams& params) {
  return std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LinearEncoder>) {
          return p.weight.rows();
        } else {
          return p.w2.rows();
        }
      },
      params);
}

LinearEncoder init_linear(std::size_t input_dim, std::size_t output_dim, std::uint64_t seed) {
  require(input_dim > 0 && output_dim > 0, ErrorKind::kParameter,
          "encoder dimensions must be positive");
  Rng rng = make_rng(derive_seed(seed, "init.linear"));
  const double bound = 1.0 / std::sqrt(static_cast<double>(input_dim));
  return {uniform_matrix(output_dim, input_dim, bound, rng)};
}

MlpEncoder init_mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                    std::uint64_t seed) {
  require(input_dim > 0 && hidden_dim > 0 && output_dim > 0, ErrorKind::kParameter,
          "encoder dimensions must be positive");
  Rng rng = make_rng(derive_seed(seed, "init.mlp"));
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  MlpEncoder mlp;
  mlp.w1 = uniform_matrix(hidden_dim, input_dim, bound1, rng);
  mlp.b1.resize(hidden_dim);
  for (double& v : mlp.b1) v = uniform(rng, -bound1, bound1);
  mlp.w2 = uniform_matrix(output_dim, hidden_dim, bound2, rng);
  mlp.b2.resize(output_dim);
  for (double& v : mlp.b2) v = uniform(rng, -bound2, bound2);
  return mlp;
}

std::vector<double> encode(const EncoderParams& params, std::span<const double> input) {
  require_input(params, input);
  if (const auto* linear = std::get_if<LinearEncoder>(&params)) {
    std::vector<double> out(linear->weight.rows());
    matvec(linear->weight, input, out);
    return out;
  }
  const auto& mlp = std::get<MlpEncoder>(params);
  std::vector<double> hidden = relu_pre(mlp, input);
  for (double& h : hidden) h = std::max(h, 0.0);
  std::vector<double> out(mlp.w2.rows());
  matvec(mlp.w2, hidden, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += mlp.b2[i];
  return out;
}

EncoderParams zeros_like(const EncoderParams& params) {
  if (const auto* linear = std::get_if<LinearEncoder>(&params)) {
    return LinearEncoder{Matrix(linear->weight.rows(), linear->weight.cols())};
  }
  const auto& mlp = std::get<MlpEncoder>(params);
  return MlpEncoder{Matrix(mlp.w1.rows(), mlp.w1.cols()), std::vector<double>(mlp.b1.size()),
                    Matrix(mlp.w2.rows(), mlp.w2.cols()), std::vector<double>(mlp.b2.size())};
}

std::vector<std::span<double>> parameter_spans(EncoderParams& params) {
  if (auto* linear = std::get_if<LinearEncoder>(&params)) return {linear->weight.values()};
  auto& mlp = std::get<MlpEncoder>(params);
  return {mlp.w1.values(), mlp.b1, mlp.w2.values(), mlp.b2};
}

std::vector<std::span<const double>> parameter_spans(const EncoderParams& params) {
  if (const auto* linear = std::get_if<LinearEncoder>(&params)) {
    return {linear->weight.values()};
  }
  const auto& mlp = std::get<MlpEncoder>(params);
  return {mlp.w1.values(), mlp.b1, mlp.w2.values(), mlp.b2};
}

double squared_norm(const EncoderParams& params) {
  double total = 0.0;
  for (auto span : parameter_spans(params)) total += squared_norm(span);
  return total;
}

void accumulate_gradient(const EncoderParams& params, std::span<const double> input,
                         std::span<const double> grad_output, EncoderParams& grad) {
  require_input(params, input);
  require(grad_output.size() == output_dim(params), ErrorKind::kShape,
          "gradient size differs from encoder output");
  if (std::holds_alternative<LinearEncoder>(params)) {
    add_outer(std::get<LinearEncoder>(grad).weight, grad_output, input);
    return;
  }
  const auto& mlp = std::get<MlpEncoder>(params);
  auto& g = std::get<MlpEncoder>(grad);
  const std::vector<double> pre = relu_pre(mlp, input);
  std::vector<double> hidden(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) hidden[i] = std::max(pre[i], 0.0);

  add_outer(g.w2, grad_output, hidden);
  for (std::size_t i = 0; i < grad_output.size(); ++i) g.b2[i] += grad_output[i];

  std::vector<double> grad_hidden(hidden.size(), 0.0);
  for (std::size_t r = 0; r < mlp.w2.rows(); ++r) {
    const auto row = mlp.w2.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) grad_hidden[c] += row[c] * grad_output[r];
  }
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (pre[i] <= 0.0) grad_hidden[i] = 0.0;
    g.b1[i] += grad_hidden[i];
  }
  add_outer(g.w1, grad_hidden, input);
}

NtXentResult ntxent_loss(const Matrix& a, const Matrix& b, double temperature) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::kShape,
          "ntxent_loss: view batches differ in shape");
  require(a.rows() >= 1 && a.cols() >= 1, ErrorKind::kContract, "ntxent_loss: empty batch");
  require(temperature > 0.0, ErrorKind::kParameter, "ntxent_loss: temperature must be positive");
  const std::size_t n = a.rows();
  const std::size_t m = 2 * n;
  const std::size_t d = a.cols();

  Matrix z(m, d);
  std::vector<double> norms(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto src = i < n ? a.row(i) : b.row(i - n);
    for (double v : src) {
      require(std::isfinite(v), ErrorKind::kInvalidInput, "ntxent_loss: non-finite embedding");
    }
    norms[i] = std::sqrt(squared_norm(src));
    require(norms[i] > 0.0, ErrorKind::kDegenerateInput,
            "ntxent_loss: zero-norm embedding at row " + std::to_string(i));
    for (std::size_t j = 0; j < d; ++j) z(i, j) = src[j] / norms[i];
  }

  Matrix logits(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i; k < m; ++k) {
      const double s = dot(z.row(i), z.row(k)) / temperature;
      logits(i, k) = s;
      logits(k, i) = s;
    }
  }

  // coef(i, k) = dL/dlogit(i, k)
  Matrix coef(m, m);
  double loss = 0.0;
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t positive = (i + n) % m;
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) peak = std::max(peak, logits(i, k));
    }
    double denom = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) denom += std::exp(logits(i, k) - peak);
    }
    loss += -logits(i, positive) + peak + std::log(denom);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      const double p = std::exp(logits(i, k) - peak) / denom;
      coef(i, k) = scale * (p - (k == positive ? 1.0 : 0.0));
    }
  }

  Matrix grad_z(m, d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const double c = coef(i, k) / temperature;
      if (c == 0.0) continue;
      auto gi = grad_z.row(i);
      auto gk = grad_z.row(k);
      const auto zi = z.row(i);
      const auto zk = z.row(k);
      for (std::size_t j = 0; j < d; ++j) {
        gi[j] += c * zk[j];
        gk[j] += c * zi[j];
      }
    }
  }

  NtXentResult result{loss * scale, Matrix(n, d), Matrix(n, d)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto zi = z.row(i);
    const auto gi = grad_z.row(i);
    const double radial = dot(zi, gi);
    auto out = i < n ? result.grad_a.row(i) : result.grad_b.row(i - n);
    for (std::size_t j = 0; j < d; ++j) out[j] = (gi[j] - zi[j] * radial) / norms[i];
  }
  return result;
}

PairedTransform spatial_transform(std::string name, std::size_t height, std::size_t width,
                                  std::function<Image(const Image&)> forward,
                                  std::function<Image(const Image&)> inverse) {
  auto lift = [name, height, width](std::function<Image(const Image&)> fn) {
    return [name, height, width, fn](std::span<const double> v) {
      require(v.size() == Image::kChannels * height * width, ErrorKind::kContract,
              "transform '" + name + "' has no output action on embeddings of size " +
                  std::to_string(v.size()));
      return flatten(fn(Image(height, width, std::vector<double>(v.begin(), v.end()))));
    };
  };
  PairedTransform t;
  t.name = name;
  t.input_action = forward;
  t.output_action = lift(forward);
  if (inverse) t.output_inverse = lift(inverse);
  return t;
}

PairedTransform invariance_transform(std::string name,
                                     std::function<Image(const Image&)> forward) {
  PairedTransform t;
  t.name = std::move(name);
  t.input_action = std::move(forward);
  return t;
}

double equi_loss(const EncoderParams& encoder, const Image& image,
                 std::span<const PairedTransform> transforms, EquiForm form) {
  if (transforms.empty()) return 0.0;
  const std::vector<double> base = encode(encoder, flatten(image));
  double total = 0.0;
  for (const PairedTransform& g : transforms) {
    const std::vector<double> moved = encode(encoder, flatten(g.input_action(image)));
    if (form == EquiForm::kForward) {
      require(static_cast<bool>(g.output_action), ErrorKind::kContract,
              "transform '" + g.name + "' lacks an output action");
      total += squared_gap(moved, g.output_action(base));
    } else {
      require(static_cast<bool>(g.output_inverse), ErrorKind::kContract,
              "transform '" + g.name + "' lacks an inverse output action");
      total += squared_gap(g.output_inverse(moved), base);
    }
  }
  return total;
}

double aug_invariance_loss(const EncoderParams& encoder, const Image& image,
                           std::span<const PairedTransform> transforms) {
  if (transforms.empty()) return 0.0;
  const std::vector<double> base = encode(encoder, flatten(image));
  double total = 0.0;
  for (const PairedTransform& g : transforms) {
    total += squared_gap(base, encode(encoder, flatten(g.input_action(image))));
  }
  return total;
}

double aug_loss(const EncoderParams& encoder, const Image& image,
                std::span<const PairedTransform> g_equi,
                std::span<const PairedTransform> g_inv) {
  return equi_loss(encoder, image, g_equi, EquiForm::kForward) +
         aug_invariance_loss(encoder, image, g_inv);
}

void validate(const TrainConfig& config) {
  require(config.learning_rate > 0.0, ErrorKind::kParameter, "learning_rate must be > 0");
  require(config.momentum >= 0.0 && config.momentum < 1.0, ErrorKind::kParameter,
          "momentum must lie in [0, 1)");
  require(config.weight_decay >= 0.0, ErrorKind::kParameter, "weight_decay must be >= 0");
  require(config.temperature > 0.0, ErrorKind::kParameter, "temperature must be > 0");
  require(config.batch_size >= 2, ErrorKind::kParameter, "batch_size must be >= 2");
  require(config.c_task >= 0.0 && config.c_equi >= 0.0 && config.c_reg >= 0.0,
          ErrorKind::kParameter, "loss weights must be >= 0");
  require(config.embedding_dim >= 1, ErrorKind::kParameter, "embedding_dim must be >= 1");
  require(config.architecture == Architecture::kLinear || config.hidden_dim >= 1,
          ErrorKind::kParameter, "hidden_dim must be >= 1");
}

EncoderParams init_encoder(const TrainConfig& config, std::size_t input_dim) {
  if (config.architecture == Architecture::kLinear) {
    return init_linear(input_dim, config.embedding_dim, config.seed);
  }
  return init_mlp(input_dim, config.hidden_dim, config.embedding_dim, config.seed);
}

void SgdMomentum::step(EncoderParams& params, const EncoderParams& grads) {
  if (!velocity_) velocity_ = zeros_like(params);
  auto p = parameter_spans(params);
  auto g = parameter_spans(grads);
  auto v = parameter_spans(*velocity_);
  require(p.size() == g.size(), ErrorKind::kShape, "gradient layout differs from parameters");
  for (std::size_t t = 0; t < p.size(); ++t) {
    require(p[t].size() == g[t].size(), ErrorKind::kShape,
            "gradient tensor size differs from parameter");
    for (std::size_t i = 0; i < p[t].size(); ++i) {
      const double d = g[t][i] + weight_decay_ * p[t][i];
      v[t][i] = momentum_ * v[t][i] + d;
      p[t][i] -= learning_rate_ * v[t][i];
    }
  }
}

std::vector<double> flatten(const Image& image) {
  return {image.values().begin(), image.values().end()};
}

TrainResult train_encoder(const Dataset& dataset, const AugmentConfig& augment,
                          const TrainConfig& config, std::optional<EncoderParams> initial) {
  validate(config);
  require(!dataset.empty(), ErrorKind::kContract, "train_encoder: empty dataset");
  require(config.batch_size <= dataset.size(), ErrorKind::kContract,
          "train_encoder: batch_size exceeds dataset size");
  const Image& first = dataset.images.front();
  validate(augment, std::min(first.height(), first.width()));
  const std::size_t d_in = first.size();

  TrainResult result{initial ? std::move(*initial) : init_encoder(config, d_in), {}};
  require(input_dim(result.params) == d_in, ErrorKind::kShape,
          "initial encoder input size differs from dataset images");
  SgdMomentum optimizer(config.learning_rate, config.momentum, config.weight_decay);

  AugmentConfig invariance = AugmentConfig::identity();
  invariance.blur = augment.blur;
  invariance.blur.probability = 1.0;
  invariance.freq_patch = augment.freq_patch;
  invariance.freq_patch.probability = 1.0;

  std::vector<std::size_t> order(dataset.size());
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = make_rng(derive_seed(config.seed, "train.shuffle", epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start + 1 < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(start + config.batch_size, order.size());
      const std::size_t n = stop - start;
      if (n < 2) break;

      std::vector<std::vector<double>> inputs_a(n);
      std::vector<std::vector<double>> inputs_b(n);
      Matrix emb_a(n, output_dim(result.params));
      Matrix emb_b(n, output_dim(result.params));
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t index = order[start + i];
        auto [view_a, view_b] = make_views(dataset.images[index], augment,
                                           derive_seed(config.seed, "train.views", epoch, index));
        inputs_a[i] = flatten(view_a);
        inputs_b[i] = flatten(view_b);
        const auto ea = encode(result.params, inputs_a[i]);
        const auto eb = encode(result.params, inputs_b[i]);
        std::copy(ea.begin(), ea.end(), emb_a.row(i).begin());
        std::copy(eb.begin(), eb.end(), emb_b.row(i).begin());
      }

      require(all_finite(emb_a.values()) && all_finite(emb_b.values()), ErrorKind::kTraining,
              "non-finite embedding in epoch " + std::to_string(epoch));
      const NtXentResult ntxent = ntxent_loss(emb_a, emb_b, config.temperature);
      require(std::isfinite(ntxent.loss), ErrorKind::kTraining,
              "non-finite loss in epoch " + std::to_string(epoch));
      epoch_loss += ntxent.loss;
      ++batches;

      EncoderParams grad = zeros_like(result.params);
      if (config.c_task > 0.0) {
        std::vector<double> g(output_dim(result.params));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < g.size(); ++j) g[j] = config.c_task * ntxent.grad_a(i, j);
          accumulate_gradient(result.params, inputs_a[i], g, grad);
          for (std::size_t j = 0; j < g.size(); ++j) g[j] = config.c_task * ntxent.grad_b(i, j);
          accumulate_gradient(result.params, inputs_b[i], g, grad);
        }
      }
      if (config.c_equi > 0.0) {
        // Invariance to randomized blur and frequency patching of each sample.
        const double w = config.c_equi / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t index = order[start + i];
          const Image& x = dataset.images[index];
          const auto input_x = flatten(x);
          const auto fx = encode(result.params, input_x);
          const std::uint64_t s = derive_seed(config.seed, "train.invariance", epoch, index);
          for (const Image& gx : {blur_augment(x, invariance, step_seed(s, "blur")),
                                  freq_patch(x, invariance, step_seed(s, "freq_patch"))}) {
            const auto input_g = flatten(gx);
            const auto fg = encode(result.params, input_g);
            std::vector<double> diff(fx.size());
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = 2.0 * w * (fx[j] - fg[j]);
            accumulate_gradient(result.params, input_x, diff, grad);
            for (double& v : diff) v = -v;
            accumulate_gradient(result.params, input_g, diff, grad);
          }
        }
      }
      if (config.c_reg > 0.0) {
        auto p = parameter_spans(std::as_const(result.params));
        auto g = parameter_spans(grad);
        for (std::size_t t = 0; t < p.size(); ++t) {
          for (std::size_t i = 0; i < p[t].size(); ++i) g[t][i] += config.c_reg * p[t][i];
        }
      }
      optimizer.step(result.params, grad);
    }
    const double mean_loss = batches ? epoch_loss / static_cast<double>(batches) : 0.0;
    require(std::isfinite(squared_norm(result.params)), ErrorKind::kTraining,
            "parameters diverged in epoch " + std::to_string(epoch));
    result.loss_trace.push_back(mean_loss);
  }
  return result;
}

EmbeddingSet embed_dataset(const EncoderParams& encoder, const Dataset& dataset,
                           InferenceTransform transform,
                           const std::optional<PoisonManifest>& manifest) {
  EmbeddingSet set;
  set.vectors = Matrix(dataset.size(), output_dim(encoder));
  set.labels = dataset.labels;
  set.poisoned.assign(dataset.size(), false);
  set.unit_norm = true;
  if (manifest) {
    for (std::size_t index : manifest->poisoned_indices) {
      require(index < dataset.size(), ErrorKind::kShape, "manifest index out of range");
      set.poisoned[index] = true;
    }
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Image& image = dataset.images[i];
    std::vector<double> e = encode(
        encoder, flatten(transform == InferenceTransform::kLuma ? luma_view(image) : image));
    const double norm = std::sqrt(squared_norm(std::span<const double>(e)));
    if (norm > 0.0) {
      for (double& v : e) v /= norm;
    }
    std::copy(e.begin(), e.end(), set.vectors.row(i).begin());
  }
  return set;
}

void export_encoder(const EncoderParams& params, const std::filesystem::path& out_dir) {
  nlohmann::json meta;
  std::vector<double> flat;
  nlohmann::json tensors = nlohmann::json::array();
  auto add = [&](const char* name, std::span<const double> values, std::size_t rows,
                 std::size_t cols) {
    tensors.push_back({{"name", name}, {"shape", {rows, cols}}});
    flat.insert(flat.end(), values.begin(), values.end());
  };
  if (const auto* linear = std::get_if<LinearEncoder>(&params)) {
    meta["architecture"] = "linear";
    add("weight", linear->weight.values(), linear->weight.rows(), linear->weight.cols());
  } else {
    const auto& mlp = std::get<MlpEncoder>(params);
    meta["architecture"] = "mlp";
    add("w1", mlp.w1.values(), mlp.w1.rows(), mlp.w1.cols());
    add("b1", mlp.b1, mlp.b1.size(), 1);
    add("w2", mlp.w2.values(), mlp.w2.rows(), mlp.w2.cols());
    add("b2", mlp.b2, mlp.b2.size(), 1);
  }
  meta["tensors"] = tensors;
  std::filesystem::create_directories(out_dir);
  write_file_atomic(out_dir / "encoder.f64", encode_f64_le(flat));
  write_file_atomic(out_dir / "encoder.json", meta.dump(2) + "\n");
}

EncoderParams import_encoder(const std::filesystem::path& dir) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_file(dir / "encoder.json"));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string("encoder.json: ") + e.what());
  }
  const std::vector<double> flat = decode_f64_le(read_file(dir / "encoder.f64"));
  std::size_t offset = 0;
  auto take = [&](std::size_t index) {
    try {
      const auto& t = meta.at("tensors").at(index);
      const std::size_t rows = t.at("shape").at(0).get<std::size_t>();
      const std::size_t cols = t.at("shape").at(1).get<std::size_t>();
      require(offset + rows * cols <= flat.size(), ErrorKind::kFormat,
              "encoder.f64 is shorter than encoder.json declares");
      Matrix m(rows, cols,
               std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(offset),
                                   flat.begin() + static_cast<std::ptrdiff_t>(offset + rows * cols)));
      offset += rows * cols;
      return m;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::kFormat, std::string("encoder.json: ") + e.what());
    }
  };
  const std::string arch = meta.value("architecture", "");
  EncoderParams params;
  if (arch == "linear") {
    params = LinearEncoder{take(0)};
  } else if (arch == "mlp") {
    MlpEncoder mlp;
    mlp.w1 = take(0);
    Matrix b1 = take(1);
    mlp.w2 = take(2);
    Matrix b2 = take(3);
    mlp.b1.assign(b1.values().begin(), b1.values().end());
    mlp.b2.assign(b2.values().begin(), b2.values().end());
    params = std::move(mlp);
  } else {
    fail(ErrorKind::kFormat, "encoder.json: unknown architecture '" + arch + "'");
  }
  require(offset == flat.size(), ErrorKind::kFormat,
          "encoder.f64 size does not match encoder.json shapes");
  return params;
}

}  // namespace freqguard
