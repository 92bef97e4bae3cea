// Copyright 2026 The PriSPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRISPS_RANDOM_H_
#define PRISPS_RANDOM_H_

#include <cstdint>
#include <random>

namespace prisps {

// Seeded generator threaded explicitly through every randomized API. There is
// no global RNG state anywhere in the library.
//
// std::mt19937_64 has a fully specified output sequence, and the uniform
// conversion below only uses integer bit manipulation, so a fixed seed yields
// the same stream of doubles on every conforming platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform double in the open interval (0, 1) with 53 bits of resolution.
  double UniformOpen01() {
    const uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi]; hi >= lo. Uses rejection sampling so the
  // result is portable (std::uniform_int_distribution is not).
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller on two open uniforms.
  double Normal();

  bool Bernoulli(double p) { return UniformOpen01() < p; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-trial streams from a
// (seed, index) pair.
uint64_t MixSeed(uint64_t x);

inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream_index) {
  return MixSeed(seed ^ MixSeed(stream_index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace prisps

#endif  // PRISPS_RANDOM_H_
