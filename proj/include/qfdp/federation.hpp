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

#include "qfdp/accountant.hpp"
#include "qfdp/config.hpp"
#include "qfdp/dp_sgd.hpp"
#include "qfdp/model.hpp"
#include "qfdp/rng.hpp"

namespace qfdp {

// One client's disjoint slice of the training data.
struct ClientShard {
  int client_id = 0;
  std::vector<Example> data;
};

struct PartitionResult {
  std::vector<ClientShard> shards;
  int dropped = 0;  // examples discarded so all shards have equal size
};

// Random permutation of `examples` split into k equal shards of floor(M/k).
// The M mod k leftovers are dropped (reported in `dropped`) so every client
// sees the same sampling probability. Throws when k > M.
PartitionResult partition(std::vector<Example> examples, int k, Rng& rng);

// Uniform sample of j distinct client ids from [0, k), returned sorted.
std::vector<int> sample_clients(int k, int j, Rng& rng);

// Copies the global model and runs `epochs` local DP-SGD epochs on the
// shard: one epoch is ceil(N / L) steps with Poisson lots at q = L / N.
// Advances the ledger by exactly one step per dp_sgd_step.
HybridModel client_update(const ClientShard& shard, const HybridModel& global,
                          int epochs, const DpConfig& dp, PrivacyLedger& ledger,
                          Rng rng);

// Parameter averaging: each trainable parameter of the result is the
// arithmetic mean over `locals`; the frozen reducer is copied from the first
// model. Throws on an empty list or mismatched architectures.
HybridModel aggregate(std::span<const HybridModel> locals);

struct MetricsRow {
  int round = 0;              // 1-based
  double epsilon = 0.0;
  double train_loss = 0.0;
  double test_loss = 0.0;
  double test_accuracy = 0.0;
  double wall_seconds = 0.0;  // duration of this round, including evaluation
};

struct TrainingResult {
  HybridModel model;
  std::vector<MetricsRow> history;
  double final_epsilon = 0.0;
  double final_epsilon_order = 0.0;
  int dropped_examples = 0;
  // Global trainable parameters after each round's aggregation.
  std::vector<std::array<double, kTrainableCount>> round_params;
};

// Full federated run: split off the test set, initialize the global model,
// partition the training split, then for each round sample clients, train
// them locally under DP-SGD, and average. The reported epsilon is the
// worst-case per-client value: each client's ledger advances only in rounds
// where that client was sampled, and the maximum over clients is reported.
TrainingResult run_training(const TrainingConfig& config,
                            const std::vector<Example>& dataset, const Rng& master);

// Reference path for clients == 1: the same data split, initialization, and
// per-round step schedule executed without the sampling/aggregation
// machinery. With clients == 1 and clients_per_round == 1, run_training
// produces bitwise-identical parameter trajectories.
TrainingResult run_centralized(const TrainingConfig& config,
                               const std::vector<Example>& dataset, const Rng& master);

}  // namespace qfdp
