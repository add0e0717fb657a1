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

#include "qfdp/federation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qfdp/dataset.hpp"

namespace qfdp {

namespace {

bool same_architecture(const HybridModel& a, const HybridModel& b) {
  if (a.n_features != b.n_features) return false;
  for (int row = 0; row < kVqcQubits; ++row) {
    if (a.reducer[row] != b.reducer[row]) return false;
  }
  return a.feature_shift == b.feature_shift && a.feature_scale == b.feature_scale;
}

int steps_per_epoch(int shard_size, int lot_size) {
  return (shard_size + lot_size - 1) / lot_size;
}

void check_non_finite(const HybridModel& model) {
  for (double v : trainable(model)) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("training diverged: non-finite model parameter");
    }
  }
}

}  // namespace

PartitionResult partition(std::vector<Example> examples, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("partition: k must be >= 1");
  if (static_cast<std::size_t>(k) > examples.size()) {
    throw std::invalid_argument("partition: k exceeds the number of examples");
  }
  // Fisher-Yates permutation, then contiguous equal slices.
  for (std::size_t i = examples.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(examples[i - 1], examples[j]);
  }
  const std::size_t shard_size = examples.size() / static_cast<std::size_t>(k);
  PartitionResult result;
  result.dropped = static_cast<int>(examples.size() - shard_size * static_cast<std::size_t>(k));
  result.shards.reserve(static_cast<std::size_t>(k));
  auto it = examples.begin();
  for (int c = 0; c < k; ++c) {
    ClientShard shard;
    shard.client_id = c;
    shard.data.assign(it, it + static_cast<long>(shard_size));
    it += static_cast<long>(shard_size);
    result.shards.push_back(std::move(shard));
  }
  return result;
}

std::vector<int> sample_clients(int k, int j, Rng& rng) {
  if (j < 1 || j > k) throw std::invalid_argument("sample_clients: need 1 <= j <= k");
  std::vector<int> ids(static_cast<std::size_t>(k));
  std::iota(ids.begin(), ids.end(), 0);
  // Partial Fisher-Yates: the first j entries are a uniform sample without
  // replacement.
  for (int i = 0; i < j; ++i) {
    const auto pick = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k - i)));
    std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(pick)]);
  }
  ids.resize(static_cast<std::size_t>(j));
  std::sort(ids.begin(), ids.end());
  return ids;
}

HybridModel client_update(const ClientShard& shard, const HybridModel& global,
                          int epochs, const DpConfig& dp, PrivacyLedger& ledger,
                          Rng rng) {
  if (shard.data.empty()) throw std::invalid_argument("client_update: empty shard");
  if (epochs < 1) throw std::invalid_argument("client_update: epochs must be >= 1");
  const int n = static_cast<int>(shard.data.size());
  if (dp.lot_size > n) {
    throw std::invalid_argument("client_update: lot_size exceeds shard size");
  }
  const double q = static_cast<double>(dp.lot_size) / static_cast<double>(n);
  const int steps = steps_per_epoch(n, dp.lot_size);

  HybridModel model = global;
  std::vector<Example> lot;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (int s = 0; s < steps; ++s) {
      const auto indices = sample_lot(n, q, rng);
      lot.clear();
      for (int idx : indices) lot.push_back(shard.data[static_cast<std::size_t>(idx)]);
      model = dp_sgd_step(std::move(model), lot, dp, rng);
      accumulate(ledger, 1);
    }
  }
  return model;
}

HybridModel aggregate(std::span<const HybridModel> locals) {
  if (locals.empty()) throw std::invalid_argument("aggregate: empty model list");
  for (const auto& m : locals) {
    if (!same_architecture(m, locals.front())) {
      throw std::invalid_argument("aggregate: architecture mismatch");
    }
  }
  HybridModel result = locals.front();
  std::array<double, kTrainableCount> mean{};
  for (const auto& m : locals) {
    const auto params = trainable(m);
    for (int j = 0; j < kTrainableCount; ++j) mean[j] += params[j];
  }
  for (auto& v : mean) v /= static_cast<double>(locals.size());
  set_trainable(result, mean);
  return result;
}

namespace {

// Shared by the federated and centralized paths so both consume identical
// random streams for identical work.
struct RunSetup {
  std::vector<Example> train;
  std::vector<Example> test;
  HybridModel model;
  std::vector<ClientShard> shards;
  int dropped = 0;
  double q = 0.0;
};

RunSetup prepare_run(const TrainingConfig& config, const std::vector<Example>& dataset,
                     const Rng& master, int n_clients) {
  config.validate();
  RunSetup setup;
  {
    Rng split_rng = master.child(streams::kSplit);
    auto [train, test] = split_train_test(dataset, config.test_fraction, split_rng);
    setup.train = std::move(train);
    setup.test = std::move(test);
  }
  setup.model = initialize_model(setup.train, master.child(streams::kInit));
  {
    Rng part_rng = master.child(streams::kPartition);
    auto parts = partition(setup.train, n_clients, part_rng);
    setup.shards = std::move(parts.shards);
    setup.dropped = parts.dropped;
  }
  const int shard_size = static_cast<int>(setup.shards.front().data.size());
  if (config.lot_size > shard_size) {
    throw std::invalid_argument(
        "lot_size (" + std::to_string(config.lot_size) +
        ") exceeds the per-client shard size (" + std::to_string(shard_size) + ")");
  }
  setup.q = static_cast<double>(config.lot_size) / static_cast<double>(shard_size);
  return setup;
}

DpConfig dp_config_of(const TrainingConfig& config) {
  return {config.clip_norm, config.noise_multiplier, config.lot_size,
          config.learning_rate};
}

MetricsRow make_metrics_row(int round, double epsilon, const HybridModel& model,
                            const std::vector<Example>& train,
                            const std::vector<Example>& test, double wall_seconds) {
  const auto train_eval = evaluate(model, train);
  const auto test_eval = evaluate(model, test);
  MetricsRow row;
  row.round = round;
  row.epsilon = epsilon;
  row.train_loss = train_eval.mean_loss;
  row.test_loss = test_eval.mean_loss;
  row.test_accuracy = test_eval.accuracy;
  row.wall_seconds = wall_seconds;
  return row;
}

}  // namespace

TrainingResult run_training(const TrainingConfig& config,
                            const std::vector<Example>& dataset, const Rng& master) {
  RunSetup setup = prepare_run(config, dataset, master, config.clients);
  const DpConfig dp = dp_config_of(config);

  // One ledger per client: a client's data participates only in the rounds
  // where that client is sampled, and the reported epsilon is the maximum
  // over clients. The per-order step costs are computed once and shared.
  const PrivacyLedger base_ledger =
      PrivacyLedger::create(setup.q, config.noise_multiplier, config.delta);
  std::vector<PrivacyLedger> ledgers(static_cast<std::size_t>(config.clients),
                                     base_ledger);

  TrainingResult result;
  result.dropped_examples = setup.dropped;
  HybridModel global = std::move(setup.model);

  std::vector<HybridModel> locals;
  for (int round = 1; round <= config.rounds; ++round) {
    const auto start = std::chrono::steady_clock::now();
    Rng sample_rng = master.child(streams::kSample, static_cast<std::uint64_t>(round));
    const auto sampled = sample_clients(config.clients, config.clients_per_round,
                                        sample_rng);
    locals.clear();
    for (int client : sampled) {
      locals.push_back(client_update(
          setup.shards[static_cast<std::size_t>(client)], global, config.local_epochs,
          dp, ledgers[static_cast<std::size_t>(client)],
          master.child(streams::kClient, static_cast<std::uint64_t>(round),
                       static_cast<std::uint64_t>(client))));
    }
    global = aggregate(locals);
    check_non_finite(global);

    double eps = 0.0;
    for (const auto& ledger : ledgers) {
      eps = std::max(eps, epsilon_for_delta(ledger).epsilon);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.history.push_back(
        make_metrics_row(round, eps, global, setup.train, setup.test, wall));
    result.round_params.push_back(trainable(global));
  }

  double final_eps = 0.0;
  double final_order = 0.0;
  for (const auto& ledger : ledgers) {
    const auto er = epsilon_for_delta(ledger);
    if (er.epsilon >= final_eps) {
      final_eps = er.epsilon;
      final_order = er.order;
    }
  }
  result.final_epsilon = final_eps;
  result.final_epsilon_order = final_order;
  result.model = std::move(global);
  return result;
}

TrainingResult run_centralized(const TrainingConfig& config,
                               const std::vector<Example>& dataset, const Rng& master) {
  RunSetup setup = prepare_run(config, dataset, master, 1);
  const DpConfig dp = dp_config_of(config);
  PrivacyLedger ledger =
      PrivacyLedger::create(setup.q, config.noise_multiplier, config.delta);

  TrainingResult result;
  result.dropped_examples = setup.dropped;
  HybridModel model = std::move(setup.model);

  for (int round = 1; round <= config.rounds; ++round) {
    const auto start = std::chrono::steady_clock::now();
    model = client_update(setup.shards.front(), model, config.local_epochs, dp, ledger,
                          master.child(streams::kClient,
                                       static_cast<std::uint64_t>(round), 0));
    check_non_finite(model);
    const double eps = epsilon_for_delta(ledger).epsilon;
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.history.push_back(
        make_metrics_row(round, eps, model, setup.train, setup.test, wall));
    result.round_params.push_back(trainable(model));
  }

  const auto er = epsilon_for_delta(ledger);
  result.final_epsilon = er.epsilon;
  result.final_epsilon_order = er.order;
  result.model = std::move(model);
  return result;
}

}  // namespace qfdp
