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

#include "qfdp/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfdp {

namespace {

// splitmix64 finalizer; used both to whiten seeds and to fold label paths
// into child seeds.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fold(std::uint64_t seed, std::uint64_t label) {
  return splitmix64(seed ^ (label + 0x9e3779b97f4a7c15ULL));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : root_(seed), gen_(splitmix64(seed)) {}

Rng Rng::child(std::uint64_t a) const { return Rng(fold(root_, a)); }

Rng Rng::child(std::uint64_t a, std::uint64_t b) const {
  return Rng(fold(fold(root_, a), b));
}

Rng Rng::child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
  return Rng(fold(fold(fold(root_, a), b), c));
}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int: bound must be >= 1");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % bound;
}

}  // namespace qfdp
