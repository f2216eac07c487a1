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

#include "private_prediction/core/noise_source.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace private_prediction {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

NoiseSource::NoiseSource(uint64_t seed) : NoiseSource(Mode::kSeeded, seed) {}

NoiseSource NoiseSource::ZeroNoise() { return NoiseSource(Mode::kZero, 0); }

NoiseSource NoiseSource::Scripted(std::vector<double> uniforms) {
  NoiseSource noise(Mode::kScripted, 0);
  noise.script_.assign(uniforms.begin(), uniforms.end());
  return noise;
}

uint64_t NoiseSource::DeriveSeed(uint64_t master_seed, uint64_t index) {
  return SplitMix64(SplitMix64(master_seed) ^ SplitMix64(~index));
}

NoiseSource NoiseSource::Derive(uint64_t master_seed, uint64_t index) {
  return NoiseSource(DeriveSeed(master_seed, index));
}

double NoiseSource::Uniform() {
  switch (mode_) {
    case Mode::kZero:
      return 0.5;
    case Mode::kScripted:
      if (script_.empty()) return 0.5;
      {
        const double u = script_.front();
        script_.pop_front();
        return u;
      }
    case Mode::kSeeded:
      break;
  }
  // 53 random bits, offset by half a step so 0 and 1 are never produced.
  const uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

uint64_t NoiseSource::UniformIndex(uint64_t n) {
  const double scaled = Uniform() * static_cast<double>(n);
  return std::min<uint64_t>(static_cast<uint64_t>(scaled), n - 1);
}

Label NoiseSource::UniformLabel() {
  return Uniform() >= 0.5 ? Label::kPositive : Label::kNegative;
}

double NoiseSource::StandardNormal() {
  if (mode_ == Mode::kZero) return 0.0;
  const double u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace private_prediction
