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

#include <span>
#include <vector>

#include "qfdp/model.hpp"
#include "qfdp/rng.hpp"

namespace qfdp {

// One client's DP-SGD knobs.
struct DpConfig {
  double clip_norm = 1.0;        // C > 0
  double noise_multiplier = 1.0; // sigma >= 0
  int lot_size = 4;              // L >= 1, expected lot size under Poisson sampling
  double learning_rate = 0.05;   // eta > 0

  void validate() const;
};

// Scales g to norm at most `clip_norm`, preserving direction:
// g * min(1, C / ||g||_2). Identity on the ball of radius C (no floating
// rounding applied in that case). Throws on non-finite input.
std::vector<double> clip_gradient(std::vector<double> g, double clip_norm);
void clip_gradient_in_place(std::span<double> g, double clip_norm);

// Poisson lot: each of the N indices is included independently with
// probability q. Consumes exactly N uniform draws. Returns indices in
// increasing order. Throws unless 0 < q <= 1.
std::vector<int> sample_lot(int dataset_size, double q, Rng& rng);

// One DP-SGD step on `lot`:
//   update = eta / L * [ sum_i clip(g_i, C) + Normal(0, sigma^2 C^2 I) ]
// applied as a decrement to the 18 trainable parameters. The divisor is the
// configured (expected) lot size, not the realized one. An empty lot still
// applies the noise term. Exactly 18 normal draws are consumed when
// sigma > 0, in trainable-parameter order, after all gradients are summed;
// none when sigma == 0.
HybridModel dp_sgd_step(HybridModel model, std::span<const Example> lot,
                        const DpConfig& cfg, Rng& rng);

}  // namespace qfdp
