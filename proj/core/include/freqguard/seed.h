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

#ifndef FREQGUARD_SEED_H_
#define FREQGUARD_SEED_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace freqguard {

using Rng = std::mt19937_64;

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// All randomness in the toolkit descends from one global seed. Each consumer
// derives its own stream from (seed, purpose[, indices]) so that adding a new
// consumer never perturbs an existing one.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                          std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                          std::uint64_t index, std::uint64_t subindex);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform draw in [lo, hi]; returns lo exactly when lo == hi.
double uniform(Rng& rng, double lo, double hi);

// Uniform integer draw in [lo, hi].
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

// Bernoulli draw with probability p; p <= 0 never fires and consumes no state.
bool bernoulli(Rng& rng, double p);

}  // namespace freqguard

#endif  // FREQGUARD_SEED_H_
