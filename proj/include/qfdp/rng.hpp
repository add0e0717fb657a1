// Copyright 2026 The QFDP Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace qfdp {

// Seedable, splittable random stream. Every consumer of randomness in a
// training run draws from a child stream derived from the master seed and a
// fixed label path (e.g. round, client id), so results are reproducible
// regardless of evaluation order and independent streams never interleave.
//
// Gaussian draws use an explicit Box-Muller transform (one variate per pair
// of uniforms, no cached twin) so the number of raw draws consumed per call
// is fixed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child stream for the given label path. Does not disturb this stream.
  Rng child(std::uint64_t a) const;
  Rng child(std::uint64_t a, std::uint64_t b) const;
  Rng child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal variate.
  double normal();

  // Uniform integer in [0, bound), bound >= 1. Rejection sampled, unbiased.
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  std::uint64_t root_;
  std::mt19937_64 gen_;
};

// Stream labels used by the training pipeline.
namespace streams {
inline constexpr std::uint64_t kData = 1;       // synthetic dataset draw
inline constexpr std::uint64_t kSplit = 2;      // train/test shuffle
inline constexpr std::uint64_t kInit = 3;       // model initialization
inline constexpr std::uint64_t kPartition = 4;  // client sharding
inline constexpr std::uint64_t kSample = 5;     // per-round client sampling
inline constexpr std::uint64_t kClient = 6;     // per-(round, client) training
}  // namespace streams

}  // namespace qfdp
