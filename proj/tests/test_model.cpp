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

#include <cmath>
#include <sstream>

#include <doctest.h>

#include "oracles.hpp"
#include "qfdp/dataset.hpp"
#include "qfdp/dp_sgd.hpp"
#include "qfdp/model.hpp"
#include "qfdp/rng.hpp"

using namespace qfdp;

namespace {

std::vector<Example> tiny_dataset(int n, int d, Rng& rng) {
  return generate_synthetic(n, d, 4.0, rng);
}

HybridModel random_model(Rng rng, int n = 64, int d = 8) {
  auto data_rng = rng.child(1);
  const auto data = tiny_dataset(n, d, data_rng);
  return initialize_model(data, rng.child(2));
}

}  // namespace

TEST_CASE("model initialization freezes a standardized reducer") {
  Rng rng(101);
  auto data_rng = rng.child(1);
  const auto data = tiny_dataset(200, 8, data_rng);
  const auto model = initialize_model(data, rng.child(2));
  CHECK(model.n_features == 8);
  // Reducer rows are orthonormal.
  for (int a = 0; a < kVqcQubits; ++a) {
    double nn = 0.0;
    for (double v : model.reducer[a]) nn += v * v;
    CHECK(nn == doctest::Approx(1.0).epsilon(1e-10));
    for (int b = a + 1; b < kVqcQubits; ++b) {
      double dp = 0.0;
      for (int i = 0; i < 8; ++i) dp += model.reducer[a][i] * model.reducer[b][i];
      CHECK(std::abs(dp) < 1e-10);
    }
  }
  // Standardization: unit variance, mean at the +1 operating point.
  for (int row = 0; row < kVqcQubits; ++row) {
    double mean = 0.0, var = 0.0;
    for (const auto& ex : data) mean += reduce_features(model, ex.features)[row];
    mean /= static_cast<double>(data.size());
    for (const auto& ex : data) {
      const double y = reduce_features(model, ex.features)[row] - mean;
      var += y * y;
    }
    var /= static_cast<double>(data.size());
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("zero head gives probabilities (0.5, 0.5)") {
  Rng rng(103);
  auto model = random_model(rng);
  model.head = {0.0, 0.0, 0.0, 0.0};
  model.bias = {0.0, 0.0};
  Rng probe(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> features(model.n_features);
    for (auto& f : features) f = probe.normal() * 3.0;
    const auto p = model_forward(model, features);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("probabilities are a distribution for random models and inputs") {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    auto model = random_model(rng.child(trial));
    std::vector<double> features(model.n_features);
    Rng probe = rng.child(trial, 1);
    for (auto& f : features) f = probe.normal() * 2.0;
    const auto p = model_forward(model, features);
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
    CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("model_forward rejects mismatched feature dimensions") {
  Rng rng(109);
  const auto model = random_model(rng);
  std::vector<double> wrong(model.n_features + 1, 0.0);
  CHECK_THROWS_AS(model_forward(model, wrong), std::invalid_argument);
}

TEST_CASE("forward matches an explicit composition of the oracles") {
  Rng rng(113);
  const auto model = random_model(rng);
  std::vector<double> features(model.n_features);
  Rng probe(17);
  for (auto& f : features) f = probe.normal();

  // Reduce by hand.
  VqcInput x{};
  for (int row = 0; row < kVqcQubits; ++row) {
    double dp = 0.0;
    for (int i = 0; i < model.n_features; ++i) dp += model.reducer[row][i] * features[i];
    x[row] = (dp - model.feature_shift[row]) / model.feature_scale[row];
  }
  // Dense circuit oracle.
  const auto amplitudes =
      oracles::mat_vec(oracles::circuit_matrix(vqc_circuit(x, model.vqc), kVqcQubits),
                       zero_state(kVqcQubits).amplitudes());
  const double z0 = oracles::expectation_z_of(amplitudes, 0);
  const double z1 = oracles::expectation_z_of(amplitudes, 1);
  // Explicit softmax.
  const double l0 = model.head[0] * z0 + model.head[1] * z1 + model.bias[0];
  const double l1 = model.head[2] * z0 + model.head[3] * z1 + model.bias[1];
  const double e0 = std::exp(l0), e1 = std::exp(l1);

  const auto p = model_forward(model, features);
  CHECK(p[0] == doctest::Approx(e0 / (e0 + e1)).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(e1 / (e0 + e1)).epsilon(1e-12));
}

TEST_CASE("equal logits give loss ln 2 for either label") {
  Rng rng(127);
  auto model = random_model(rng);
  model.head = {0.0, 0.0, 0.0, 0.0};
  model.bias = {0.0, 0.0};
  Example ex;
  ex.features.assign(model.n_features, 0.25);
  for (int label : {0, 1}) {
    ex.label = label;
    const auto lg = loss_and_gradient(model, ex);
    CHECK(lg.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("all 18 partial derivatives match central finite differences") {
  Rng rng(131);
  for (int trial = 0; trial < 50; ++trial) {
    auto model = random_model(rng.child(trial), 48, 6);
    Example ex;
    ex.features.resize(model.n_features);
    Rng probe = rng.child(trial, 9);
    for (auto& f : ex.features) f = probe.normal() * 2.0;
    ex.label = trial % 2;

    const auto lg = loss_and_gradient(model, ex);
    const auto base = trainable(model);
    for (int j = 0; j < kTrainableCount; ++j) {
      const auto f = [&](double value) {
        HybridModel perturbed = model;
        auto params = base;
        params[j] = value;
        set_trainable(perturbed, params);
        return loss_and_gradient(perturbed, ex).loss;
      };
      const double fd = oracles::central_difference(f, base[j], 1e-5);
      REQUIRE(std::abs(lg.gradient[j] - fd) < 1e-5);
    }
  }
}

TEST_CASE("a confident correct head gives near-zero loss and small gradient") {
  Rng rng(137);
  auto model = random_model(rng);
  Example ex;
  ex.features.assign(model.n_features, 0.5);
  ex.label = 0;
  model.bias = {10.0, 0.0};  // pushes probability of label 0 toward 1
  const auto lg = loss_and_gradient(model, ex);
  CHECK(lg.loss < 0.01);
  double norm = 0.0;
  for (double g : lg.gradient) norm += g * g;
  CHECK(std::sqrt(norm) < 0.1);
}

TEST_CASE("loss is nonnegative") {
  Rng rng(139);
  for (int trial = 0; trial < 20; ++trial) {
    auto model = random_model(rng.child(trial));
    Example ex;
    ex.features.assign(model.n_features, -1.5);
    ex.label = trial % 2;
    CHECK(loss_and_gradient(model, ex).loss >= 0.0);
  }
}

TEST_CASE("evaluate matches per-example losses and applies the tie rule") {
  Rng rng(149);
  auto data_rng = rng.child(1);
  auto data = tiny_dataset(64, 8, data_rng);
  const auto model = initialize_model(data, rng.child(2));

  const auto eval = evaluate(model, data);
  double loss_sum = 0.0;
  for (const auto& ex : data) loss_sum += loss_and_gradient(model, ex).loss;
  CHECK(eval.mean_loss ==
        doctest::Approx(loss_sum / static_cast<double>(data.size())).epsilon(1e-12));

  // Zero head: every prediction ties and goes to label 0; balanced labels
  // give exactly 0.5 accuracy.
  auto tied = model;
  tied.head = {0.0, 0.0, 0.0, 0.0};
  tied.bias = {0.0, 0.0};
  CHECK(evaluate(tied, data).accuracy == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(evaluate(model, {}), std::invalid_argument);
}

TEST_CASE("an always-correct model scores accuracy 1") {
  // Single-class data plus a hard bias toward that class: every prediction
  // is right by construction.
  Rng rng(151);
  Rng data_rng = rng.child(1);
  auto data = generate_synthetic(30, 6, 2.0, data_rng);
  for (auto& ex : data) ex.label = 0;
  auto model = initialize_model(data, rng.child(2));
  model.bias = {50.0, 0.0};
  CHECK(evaluate(model, data).accuracy == 1.0);
}

TEST_CASE("serialization round-trips bit-exactly and keeps the reducer frozen") {
  Rng rng(157);
  auto data_rng = rng.child(1);
  auto data = tiny_dataset(64, 8, data_rng);
  auto model = initialize_model(data, rng.child(2));

  std::ostringstream first;
  save_model(model, first);

  // Train a few noisy steps; only trainable parameters may change.
  DpConfig dp{1.0, 1.0, 8, 0.1};
  Rng step_rng = rng.child(3);
  auto trained = model;
  for (int step = 0; step < 5; ++step) {
    const auto lot_indices = sample_lot(static_cast<int>(data.size()), 0.25, step_rng);
    std::vector<Example> lot;
    for (int idx : lot_indices) lot.push_back(data[static_cast<std::size_t>(idx)]);
    trained = dp_sgd_step(std::move(trained), lot, dp, step_rng);
  }
  std::ostringstream after;
  save_model(trained, after);

  // Reducer lines are bit-identical before and after training.
  std::istringstream before_in(first.str()), after_in(after.str());
  std::string before_line, after_line;
  for (int line = 0; line < 1 + kVqcQubits + 2; ++line) {
    std::getline(before_in, before_line);
    std::getline(after_in, after_line);
    CHECK(before_line == after_line);
  }

  // Round trip reproduces every byte.
  std::istringstream reload(first.str());
  const auto restored = load_model(reload);
  std::ostringstream second;
  save_model(restored, second);
  CHECK(first.str() == second.str());
}
