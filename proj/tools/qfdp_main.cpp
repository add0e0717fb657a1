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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfdp/accountant.hpp"
#include "qfdp/dataset.hpp"
#include "qfdp/experiment.hpp"
#include "qfdp/serialize.hpp"
#include "qfdp/vqc.hpp"

namespace {

// Registers one optional flag per config key; only flags the user passed are
// applied, so precedence stays defaults < preset < config file < flags.
struct ConfigFlags {
  std::optional<std::string> dataset, csv_path, output_dir;
  std::optional<int> n_examples, n_features, clients, clients_per_round,
      local_epochs, rounds, lot_size;
  std::optional<double> separation, test_fraction, clip_norm, noise_multiplier,
      learning_rate, delta;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App& app) {
    app.add_option("--dataset", dataset, "'synthetic' or 'csv'");
    app.add_option("--csv_path", csv_path, "feature CSV path (dataset=csv)");
    app.add_option("--n_examples", n_examples, "synthetic dataset size");
    app.add_option("--n_features", n_features, "synthetic feature dimension");
    app.add_option("--separation", separation, "synthetic class separation");
    app.add_option("--test_fraction", test_fraction, "held-out test fraction");
    app.add_option("--clients", clients, "total clients K");
    app.add_option("--clients_per_round", clients_per_round, "clients sampled per round J");
    app.add_option("--local_epochs", local_epochs, "local epochs per round T");
    app.add_option("--rounds", rounds, "federation rounds R");
    app.add_option("--lot_size", lot_size, "expected DP-SGD lot size L");
    app.add_option("--clip_norm", clip_norm, "per-example gradient clip C");
    app.add_option("--noise_multiplier", noise_multiplier, "Gaussian noise multiplier sigma");
    app.add_option("--learning_rate", learning_rate, "SGD learning rate");
    app.add_option("--delta", delta, "target DP delta");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--output_dir", output_dir, "output directory");
  }

  void apply(qfdp::TrainingConfig& cfg) const {
    if (dataset) cfg.dataset = *dataset;
    if (csv_path) cfg.csv_path = *csv_path;
    if (n_examples) cfg.n_examples = *n_examples;
    if (n_features) cfg.n_features = *n_features;
    if (separation) cfg.separation = *separation;
    if (test_fraction) cfg.test_fraction = *test_fraction;
    if (clients) cfg.clients = *clients;
    if (clients_per_round) cfg.clients_per_round = *clients_per_round;
    if (local_epochs) cfg.local_epochs = *local_epochs;
    if (rounds) cfg.rounds = *rounds;
    if (lot_size) cfg.lot_size = *lot_size;
    if (clip_norm) cfg.clip_norm = *clip_norm;
    if (noise_multiplier) cfg.noise_multiplier = *noise_multiplier;
    if (learning_rate) cfg.learning_rate = *learning_rate;
    if (delta) cfg.delta = *delta;
    if (seed) cfg.seed = *seed;
    if (output_dir) cfg.output_dir = *output_dir;
  }
};

int run_train(const std::string& preset, const std::string& config_path,
              const ConfigFlags& flags) {
  qfdp::TrainingConfig cfg;  // defaults are the desk-scale preset
  bool sigma_sweep = false;
  if (preset == "" || preset == "paper-shape") {
    // defaults
  } else if (preset == "sigma-sweep") {
    sigma_sweep = true;
  } else {
    std::cerr << "config error: unknown preset '" << preset
              << "' (available: paper-shape, sigma-sweep)\n";
    return qfdp::kExitConfigError;
  }

  if (!config_path.empty()) {
    try {
      cfg = qfdp::load_config_file(config_path, cfg);
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return qfdp::kExitConfigError;
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return qfdp::kExitConfigError;
    }
  }
  flags.apply(cfg);

  if (!sigma_sweep) {
    return qfdp::run_experiment(cfg, std::cout);
  }

  for (double sigma : {0.15, 1.0, 4.0}) {
    qfdp::TrainingConfig sweep_cfg = cfg;
    sweep_cfg.noise_multiplier = sigma;
    std::cout << "=== noise_multiplier " << sigma << " ===\n";
    const int rc = qfdp::run_experiment(sweep_cfg, std::cout,
                                        "_sigma" + qfdp::format_double(sigma));
    if (rc != qfdp::kExitOk) return rc;
  }
  return qfdp::kExitOk;
}

int run_accountant(double q, double sigma, long long steps, double delta) {
  try {
    const auto result = qfdp::compute_epsilon(q, sigma, steps, delta);
    if (!std::isfinite(result.epsilon)) {
      std::cout << "epsilon: non-private (infinite)\n";
    } else {
      std::cout << "epsilon: " << qfdp::format_double(result.epsilon)
                << " (best order " << qfdp::format_double(result.order) << ")\n";
    }
    return qfdp::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qfdp::kExitConfigError;
  }
}

int run_synth(int n, int d, double separation, std::uint64_t seed,
              const std::string& out_path) {
  try {
    qfdp::Rng rng = qfdp::Rng(seed).child(qfdp::streams::kData);
    const auto examples = qfdp::generate_synthetic(n, d, separation, rng);
    qfdp::save_features_csv(examples, out_path);
    std::cout << "wrote " << examples.size() << " examples to " << out_path << '\n';
    return qfdp::kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qfdp::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return qfdp::kExitDataError;
  }
}

int run_simulate(const std::vector<double>& features, const std::vector<double>& angles) {
  try {
    if (features.size() != qfdp::kVqcQubits) {
      throw std::invalid_argument("--features expects exactly 4 values");
    }
    if (!angles.empty() && angles.size() != qfdp::kVqcParamCount) {
      throw std::invalid_argument("--angles expects exactly 12 values");
    }
    qfdp::VqcInput x{};
    std::copy(features.begin(), features.end(), x.begin());
    qfdp::VqcParameters params;
    if (!angles.empty()) std::copy(angles.begin(), angles.end(), params.angles.begin());

    const auto [z0, z1] = qfdp::vqc_forward(x, params);
    std::cout << "z0=" << qfdp::format_double(z0) << '\n'
              << "z1=" << qfdp::format_double(z1) << '\n';
    const auto [g0, g1] = qfdp::vqc_gradient_pair(x, params);
    std::cout << "grad_z0=" << qfdp::format_doubles(g0) << '\n';
    std::cout << "grad_z1=" << qfdp::format_doubles(g1) << '\n';
    return qfdp::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return qfdp::kExitConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private federated training of a hybrid quantum-classical "
      "binary classifier on an exact 4-qubit statevector simulator"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "run a federated DP training experiment");
  std::string preset;
  std::string config_path;
  ConfigFlags flags;
  train->add_option("--preset", preset, "'paper-shape' (default config) or 'sigma-sweep'");
  train->add_option("--config", config_path, "key=value config file");
  flags.add_to(*train);

  // accountant
  auto* accountant =
      app.add_subcommand("accountant", "query epsilon for a subsampled Gaussian mechanism");
  double q = 0.0, sigma = 0.0, delta = 1e-5;
  long long steps = 0;
  accountant->add_option("--q", q, "sampling probability")->required();
  accountant->add_option("--sigma", sigma, "noise multiplier")->required();
  accountant->add_option("--steps", steps, "number of composed steps")->required();
  accountant->add_option("--delta", delta, "target delta");

  // synth
  auto* synth = app.add_subcommand("synth", "write a synthetic feature CSV");
  int n = 5000, d = 16;
  double separation = 6.0;
  std::uint64_t seed = 42;
  std::string out_path = "synthetic.csv";
  synth->add_option("--n", n, "number of examples");
  synth->add_option("--d", d, "feature dimension");
  synth->add_option("--separation", separation, "class separation");
  synth->add_option("--seed", seed, "seed");
  synth->add_option("--out", out_path, "output CSV path");

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "dump circuit readouts and gradients for one input");
  std::vector<double> sim_features;
  std::vector<double> sim_angles;
  simulate->add_option("--features", sim_features, "4 input features")
      ->required()
      ->expected(4);
  simulate->add_option("--angles", sim_angles, "12 variational angles (default all 0)")
      ->expected(12);

  CLI11_PARSE(app, argc, argv);

  if (train->parsed()) return run_train(preset, config_path, flags);
  if (accountant->parsed()) return run_accountant(q, sigma, steps, delta);
  if (synth->parsed()) return run_synth(n, d, separation, seed, out_path);
  if (simulate->parsed()) return run_simulate(sim_features, sim_angles);
  return qfdp::kExitConfigError;
}
