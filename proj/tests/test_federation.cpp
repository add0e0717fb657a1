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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <doctest.h>

#include "qfdp/dataset.hpp"
#include "qfdp/experiment.hpp"
#include "qfdp/federation.hpp"

using namespace qfdp;

namespace {

// Multiset signature of a dataset for coverage checks.
std::multiset<std::pair<double, int>> signature(const std::vector<Example>& examples) {
  std::multiset<std::pair<double, int>> sig;
  for (const auto& ex : examples) sig.insert({ex.features.at(0), ex.label});
  return sig;
}

TrainingConfig tiny_config() {
  TrainingConfig cfg;
  cfg.n_examples = 120;
  cfg.n_features = 6;
  cfg.separation = 4.0;
  cfg.test_fraction = 0.25;
  cfg.clients = 3;
  cfg.clients_per_round = 2;
  cfg.local_epochs = 1;
  cfg.rounds = 4;
  cfg.lot_size = 5;
  cfg.learning_rate = 0.1;
  cfg.noise_multiplier = 0.5;
  cfg.output_dir = "unused";
  return cfg;
}

}  // namespace

TEST_CASE("partition produces equal disjoint shards that cover the input") {
  Rng master(301);
  Rng data_rng = master.child(1);
  auto data = generate_synthetic(100, 6, 3.0, data_rng);

  SUBCASE("single shard is the permuted dataset") {
    Rng rng = master.child(2);
    const auto result = partition(data, 1, rng);
    CHECK(result.shards.size() == 1);
    CHECK(result.dropped == 0);
    CHECK(signature(result.shards[0].data) == signature(data));
  }

  SUBCASE("equal shards with remainder dropped") {
    Rng rng = master.child(3);
    std::vector<Example> ten(data.begin(), data.begin() + 10);
    const auto result = partition(ten, 3, rng);
    CHECK(result.shards.size() == 3);
    CHECK(result.dropped == 1);
    for (const auto& shard : result.shards) CHECK(shard.data.size() == 3);
  }

  SUBCASE("coverage and disjointness at an even split") {
    Rng rng = master.child(4);
    const auto result = partition(data, 4, rng);
    CHECK(result.dropped == 0);
    std::vector<Example> merged;
    for (const auto& shard : result.shards) {
      CHECK(shard.data.size() == 25);
      merged.insert(merged.end(), shard.data.begin(), shard.data.end());
    }
    CHECK(signature(merged) == signature(data));
  }

  SUBCASE("more clients than examples is an error") {
    Rng rng = master.child(5);
    std::vector<Example> three(data.begin(), data.begin() + 3);
    CHECK_THROWS_AS(partition(three, 4, rng), std::invalid_argument);
  }
}

TEST_CASE("the documented experiment shape partitions evenly") {
  Rng master(303);
  Rng data_rng = master.child(1);
  // 23000 examples over 100 clients gives shards of exactly 230.
  auto data = generate_synthetic(23000, 4, 1.0, data_rng);
  Rng rng = master.child(2);
  const auto result = partition(std::move(data), 100, rng);
  CHECK(result.shards.size() == 100);
  CHECK(result.dropped == 0);
  for (const auto& shard : result.shards) CHECK(shard.data.size() == 230);
}

TEST_CASE("sample_clients draws distinct ids and is seed-deterministic") {
  Rng master(307);

  SUBCASE("all clients when j equals k") {
    Rng rng = master.child(1);
    const auto ids = sample_clients(7, 7, rng);
    CHECK(ids.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(ids[static_cast<std::size_t>(i)] == i);
  }

  SUBCASE("5 of 100 are distinct and in range") {
    Rng rng = master.child(2);
    const auto ids = sample_clients(100, 5, rng);
    CHECK(ids.size() == 5);
    CHECK(std::set<int>(ids.begin(), ids.end()).size() == 5);
    for (int id : ids) {
      CHECK(id >= 0);
      CHECK(id < 100);
    }
  }

  SUBCASE("fixed seed repeats the sample") {
    Rng a = master.child(3), b = master.child(3);
    CHECK(sample_clients(50, 9, a) == sample_clients(50, 9, b));
  }

  SUBCASE("uniformity across many draws") {
    std::map<int, int> counts;
    Rng rng = master.child(4);
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) {
      for (int id : sample_clients(10, 3, rng)) counts[id]++;
    }
    // Each id appears with probability 0.3 per draw.
    for (const auto& [id, count] : counts) {
      CHECK(std::abs(count - draws * 0.3) < 5.0 * std::sqrt(draws * 0.3 * 0.7));
    }
  }

  SUBCASE("j > k is an error") {
    Rng rng = master.child(5);
    CHECK_THROWS_AS(sample_clients(3, 4, rng), std::invalid_argument);
  }
}

TEST_CASE("client_update reduces to full-batch descent when not private") {
  Rng master(311);
  Rng data_rng = master.child(1);
  auto data = generate_synthetic(24, 6, 3.0, data_rng);
  const auto model = initialize_model(data, master.child(2));

  ClientShard shard{0, data};
  DpConfig dp{1e9, 0.0, static_cast<int>(data.size()), 0.05};  // q = 1, C huge
  auto ledger = PrivacyLedger::create(1.0, 0.0, 1e-5);
  const int epochs = 3;
  Rng update_rng = master.child(3);
  const auto local = client_update(shard, model, epochs, dp, ledger, update_rng);
  CHECK(ledger.steps == epochs);  // one full-batch step per epoch

  // Reference: plain full-batch gradient descent.
  auto reference = model;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::array<double, kTrainableCount> sum{};
    for (const auto& ex : data) {
      const auto lg = loss_and_gradient(reference, ex);
      for (int j = 0; j < kTrainableCount; ++j) sum[j] += lg.gradient[j];
    }
    auto params = trainable(reference);
    for (int j = 0; j < kTrainableCount; ++j) {
      params[j] -= 0.05 / static_cast<double>(data.size()) * sum[j];
    }
    set_trainable(reference, params);
  }
  const auto got = trainable(local);
  const auto want = trainable(reference);
  for (int j = 0; j < kTrainableCount; ++j) {
    CHECK(std::abs(got[j] - want[j]) < 1e-10);
  }
}

TEST_CASE("client_update trains away from the global model and advances the ledger") {
  Rng master(313);
  Rng data_rng = master.child(1);
  auto data = generate_synthetic(20, 6, 3.0, data_rng);
  const auto model = initialize_model(data, master.child(2));
  ClientShard shard{0, data};
  DpConfig dp{1.0, 1.0, 4, 0.05};
  auto ledger = PrivacyLedger::create(0.2, 1.0, 1e-5);
  Rng update_rng = master.child(3);
  const auto local = client_update(shard, model, 2, dp, ledger, update_rng);
  CHECK(ledger.steps == 2 * ((20 + 3) / 4));
  CHECK(trainable(local) != trainable(model));
}

TEST_CASE("aggregate averages trainable parameters and validates architecture") {
  Rng master(317);
  Rng data_rng = master.child(1);
  auto data = generate_synthetic(40, 6, 3.0, data_rng);
  const auto base = initialize_model(data, master.child(2));

  SUBCASE("aggregate of identical models is the model") {
    std::vector<HybridModel> locals(5, base);
    const auto mean = aggregate(locals);
    const auto got = trainable(mean);
    const auto want = trainable(base);
    for (int j = 0; j < kTrainableCount; ++j) {
      CHECK(std::abs(got[j] - want[j]) <= 1e-15 * std::abs(want[j]));
    }
  }

  SUBCASE("opposite parameters cancel") {
    auto plus = base;
    auto minus = base;
    auto params = trainable(base);
    set_trainable(plus, params);
    for (auto& v : params) v = -v;
    set_trainable(minus, params);
    const auto mean = trainable(aggregate(std::vector<HybridModel>{plus, minus}));
    for (double v : mean) CHECK(v == 0.0);
  }

  SUBCASE("five random models average elementwise") {
    Rng rng = master.child(3);
    std::vector<HybridModel> locals;
    std::array<double, kTrainableCount> expected{};
    for (int i = 0; i < 5; ++i) {
      auto m = base;
      std::array<double, kTrainableCount> params{};
      for (auto& v : params) v = rng.normal();
      set_trainable(m, params);
      for (int j = 0; j < kTrainableCount; ++j) expected[j] += params[j];
      locals.push_back(std::move(m));
    }
    for (auto& v : expected) v /= 5.0;
    const auto mean = trainable(aggregate(locals));
    for (int j = 0; j < kTrainableCount; ++j) {
      CHECK(mean[j] == doctest::Approx(expected[j]).epsilon(1e-12));
    }
  }

  SUBCASE("idempotence: aggregating the aggregate changes nothing") {
    Rng rng = master.child(4);
    std::vector<HybridModel> locals;
    for (int i = 0; i < 3; ++i) {
      auto m = base;
      std::array<double, kTrainableCount> params{};
      for (auto& v : params) v = rng.normal();
      set_trainable(m, params);
      locals.push_back(std::move(m));
    }
    const auto once = aggregate(locals);
    std::vector<HybridModel> copies(4, once);
    const auto twice = aggregate(copies);
    CHECK(trainable(once) == trainable(twice));
  }

  SUBCASE("architecture mismatch is rejected") {
    auto other_data = data;
    for (auto& ex : other_data) ex.features[0] += 2.5;
    const auto other = initialize_model(other_data, master.child(5));
    CHECK_THROWS_AS(aggregate(std::vector<HybridModel>{base, other}),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
  }
}

TEST_CASE("run_training with zero rounds returns the initialized model") {
  auto cfg = tiny_config();
  cfg.rounds = 0;
  const Rng master(cfg.seed);
  const auto dataset = load_dataset(cfg, master);
  const auto result = run_training(cfg, dataset, master);
  CHECK(result.history.empty());
  CHECK(result.final_epsilon >= 0.0);
  CHECK(result.final_epsilon < 1.2e-5);  // conversion overhead only
}

TEST_CASE("run_training is bitwise reproducible from the seed") {
  const auto cfg = tiny_config();
  const Rng master(cfg.seed);
  const auto dataset = load_dataset(cfg, master);
  const auto a = run_training(cfg, dataset, master);
  const auto b = run_training(cfg, dataset, master);
  REQUIRE(a.round_params.size() == b.round_params.size());
  for (std::size_t r = 0; r < a.round_params.size(); ++r) {
    CHECK(a.round_params[r] == b.round_params[r]);
  }
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t r = 0; r < a.history.size(); ++r) {
    CHECK(a.history[r].epsilon == b.history[r].epsilon);
    CHECK(a.history[r].test_accuracy == b.history[r].test_accuracy);
    CHECK(a.history[r].train_loss == b.history[r].train_loss);
  }
}

TEST_CASE("epsilon grows round over round and only sampled clients matter") {
  auto cfg = tiny_config();
  cfg.rounds = 6;
  const Rng master(cfg.seed);
  const auto dataset = load_dataset(cfg, master);
  const auto result = run_training(cfg, dataset, master);
  REQUIRE(result.history.size() == 6);
  for (std::size_t r = 1; r < result.history.size(); ++r) {
    CHECK(result.history[r].epsilon >= result.history[r - 1].epsilon);
  }
  CHECK(result.final_epsilon == result.history.back().epsilon);
}

TEST_CASE("federated K=1 J=1 equals the centralized reference bitwise") {
  auto cfg = tiny_config();
  cfg.clients = 1;
  cfg.clients_per_round = 1;
  cfg.rounds = 5;
  cfg.local_epochs = 2;
  const Rng master(cfg.seed);
  const auto dataset = load_dataset(cfg, master);

  const auto fed = run_training(cfg, dataset, master);
  const auto central = run_centralized(cfg, dataset, master);
  REQUIRE(fed.round_params.size() == central.round_params.size());
  for (std::size_t r = 0; r < fed.round_params.size(); ++r) {
    CHECK(fed.round_params[r] == central.round_params[r]);
  }
  CHECK(fed.final_epsilon == central.final_epsilon);
}

TEST_CASE("lot_size larger than a shard is rejected") {
  auto cfg = tiny_config();
  cfg.lot_size = 1000;
  const Rng master(cfg.seed);
  const auto dataset = load_dataset(cfg, master);
  CHECK_THROWS_AS(run_training(cfg, dataset, master), std::invalid_argument);
}
