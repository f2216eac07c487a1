//
// Copyright 2026 The Private Prediction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVATE_PREDICTION_CORE_NOISE_SOURCE_H_
#define PRIVATE_PREDICTION_CORE_NOISE_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "private_prediction/core/types.h"

namespace private_prediction {

// Seeded source of all randomness in the library.
//
// Every randomized operation consumes uniforms from a NoiseSource, so a seed
// fully determines a run. Derived quantities (indices, coins, normals) are
// computed from the uniforms here rather than with <random> distributions,
// whose outputs are implementation-defined.
//
// In zero-noise mode every uniform is exactly 0.5, so inverse-CDF samplers
// return their median. Scripted mode returns a fixed list of uniforms first
// and 0.5 afterwards; tests use it to inject specific draws.
//
// Single owner; not shared across threads. Use Derive() to give each trial an
// independent stream.
class NoiseSource {
 public:
  explicit NoiseSource(uint64_t seed);

  static NoiseSource ZeroNoise();
  static NoiseSource Scripted(std::vector<double> uniforms);
  // Stream for trial `index` under `master_seed`.
  static NoiseSource Derive(uint64_t master_seed, uint64_t index);
  static uint64_t DeriveSeed(uint64_t master_seed, uint64_t index);

  NoiseSource(NoiseSource&&) = default;
  NoiseSource& operator=(NoiseSource&&) = default;
  NoiseSource(const NoiseSource&) = delete;
  NoiseSource& operator=(const NoiseSource&) = delete;

  // Uniform draw in the open interval (0, 1).
  double Uniform();
  // Uniform index in [0, n). Requires n >= 1.
  uint64_t UniformIndex(uint64_t n);
  // Fair coin: +1 when the uniform is >= 1/2.
  Label UniformLabel();
  // Standard normal via Box-Muller.
  double StandardNormal();

  bool zero_noise() const { return mode_ == Mode::kZero; }
  uint64_t seed() const { return seed_; }

 private:
  enum class Mode { kSeeded, kZero, kScripted };

  NoiseSource(Mode mode, uint64_t seed) : mode_(mode), seed_(seed), engine_(seed) {}

  Mode mode_;
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::deque<double> script_;
};

// In-place Fisher-Yates shuffle driven by `noise`.
template <typename T>
void Shuffle(std::vector<T>& items, NoiseSource& noise) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = noise.UniformIndex(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace private_prediction

#endif  // PRIVATE_PREDICTION_CORE_NOISE_SOURCE_H_
