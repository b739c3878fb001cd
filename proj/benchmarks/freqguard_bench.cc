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

#include <benchmark/benchmark.h>

#include <random>

#include "freqguard/attacks.h"
#include "freqguard/eval.h"
#include "freqguard/trainer.h"
#include "freqguard/transforms.h"

namespace freqguard {
namespace {

Plane random_plane(std::size_t side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(side, side);
  for (double& v : p.values()) v = u(rng);
  return p;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (double& v : m.values()) v = g(rng);
  return m;
}

void BM_Dct2(benchmark::State& state) {
  const Plane p = random_plane(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dct2(p));
}
BENCHMARK(BM_Dct2)->Arg(16)->Arg(32)->Arg(64);

void BM_Fft2(benchmark::State& state) {
  const Plane p = random_plane(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fft2(p));
}
BENCHMARK(BM_Fft2)->Arg(16)->Arg(32)->Arg(64);

void BM_Convolve2d(benchmark::State& state) {
  const Plane p = random_plane(32, 3);
  const double sigma = static_cast<double>(state.range(0)) / 2.0;
  const Kernel k = gaussian_kernel(sigma, gaussian_kernel_size(sigma));
  for (auto _ : state) benchmark::DoNotOptimize(convolve2d(p, k, Boundary::kReflect));
}
BENCHMARK(BM_Convolve2d)->Arg(1)->Arg(2)->Arg(3);

void BM_CtrlPoison(benchmark::State& state) {
  Image img(32, 32, Colorspace::kRgb, 0.5);
  const CtrlTrigger spec = CtrlTrigger::from_pixel_scale(100);
  for (auto _ : state) benchmark::DoNotOptimize(ctrl_poison(img, spec));
}
BENCHMARK(BM_CtrlPoison);

void BM_NtXent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = random_matrix(n, 64, 4), b = random_matrix(n, 64, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ntxent_loss(a, b, 0.5));
}
BENCHMARK(BM_NtXent)->Arg(32)->Arg(64)->Arg(128);

void BM_Knn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  EmbeddingSet bank;
  bank.vectors = random_matrix(n, 64, 6);
  bank.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) bank.labels[i] = i % 10;
  bank.poisoned.assign(n, false);
  const Matrix queries = random_matrix(100, 64, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_classify(bank, queries, default_k(n), Metric::kCosine));
  }
}
BENCHMARK(BM_Knn)->Arg(600)->Arg(5000);

}  // namespace
}  // namespace freqguard

BENCHMARK_MAIN();
