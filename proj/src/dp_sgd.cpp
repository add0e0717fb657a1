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

#include "qfdp/dp_sgd.hpp"

#include <cmath>
#include <stdexcept>

namespace qfdp {

void DpConfig::validate() const {
  if (!(clip_norm > 0.0)) throw std::invalid_argument("clip_norm must be > 0");
  if (!(noise_multiplier >= 0.0)) {
    throw std::invalid_argument("noise_multiplier must be >= 0");
  }
  if (lot_size < 1) throw std::invalid_argument("lot_size must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
}

void clip_gradient_in_place(std::span<double> g, double clip_norm) {
  if (!(clip_norm > 0.0)) throw std::invalid_argument("clip_norm must be > 0");
  double sq = 0.0;
  for (double v : g) {
    if (!std::isfinite(v)) throw std::invalid_argument("gradient is not finite");
    sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm > clip_norm) {
    const double scale = clip_norm / norm;
    for (double& v : g) v *= scale;
  }
}

std::vector<double> clip_gradient(std::vector<double> g, double clip_norm) {
  clip_gradient_in_place(g, clip_norm);
  return g;
}

std::vector<int> sample_lot(int dataset_size, double q, Rng& rng) {
  if (dataset_size < 1) throw std::invalid_argument("dataset_size must be >= 1");
  if (!(q > 0.0) || q > 1.0) {
    throw std::invalid_argument("sampling probability must be in (0, 1]");
  }
  std::vector<int> lot;
  for (int i = 0; i < dataset_size; ++i) {
    if (rng.uniform() < q) lot.push_back(i);
  }
  return lot;
}

HybridModel dp_sgd_step(HybridModel model, std::span<const Example> lot,
                        const DpConfig& cfg, Rng& rng) {
  cfg.validate();

  std::array<double, kTrainableCount> sum{};
  for (const auto& ex : lot) {
    auto lg = loss_and_gradient(model, ex);
    clip_gradient_in_place(lg.gradient, cfg.clip_norm);
    for (int j = 0; j < kTrainableCount; ++j) sum[j] += lg.gradient[j];
  }

  // Noise draws happen after the gradient pass, in a fixed coordinate order.
  if (cfg.noise_multiplier > 0.0) {
    const double noise_std = cfg.noise_multiplier * cfg.clip_norm;
    for (int j = 0; j < kTrainableCount; ++j) sum[j] += noise_std * rng.normal();
  }

  auto params = trainable(model);
  const double scale = cfg.learning_rate / static_cast<double>(cfg.lot_size);
  for (int j = 0; j < kTrainableCount; ++j) params[j] -= scale * sum[j];
  set_trainable(model, params);
  return model;
}

}  // namespace qfdp
