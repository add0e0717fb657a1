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
#include <string>
#include <vector>

namespace qfdp {

// Federation shape: K clients, J sampled per round, T local epochs, R rounds.
struct RoundConfig {
  int clients = 100;
  int clients_per_round = 5;
  int local_epochs = 1;
  int rounds = 60;
};

// Every knob of one training run. The field set, the key=value config file,
// the CLI flags, and the run manifest all use the same names.
struct TrainingConfig {
  std::string dataset = "synthetic";  // "synthetic" or "csv"
  std::string csv_path;
  int n_examples = 5000;
  int n_features = 16;
  double separation = 6.0;
  double test_fraction = 0.2;
  int clients = 100;
  int clients_per_round = 5;
  int local_epochs = 1;
  int rounds = 60;
  int lot_size = 4;
  double clip_norm = 1.0;
  double noise_multiplier = 1.0;
  double learning_rate = 0.05;
  double delta = 1e-5;
  std::uint64_t seed = 42;
  std::string output_dir = "runs/default";

  RoundConfig round_config() const {
    return {clients, clients_per_round, local_epochs, rounds};
  }

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  // Resolved key=value form, one key per line, fixed key order. This is the
  // body of the run manifest.
  std::string to_key_values() const;

  // Applies `key=value`. Throws std::invalid_argument on an unknown key or
  // an unparseable value.
  void set_key_value(const std::string& key, const std::string& value);
};

// Parses a flat key=value config file ('#' starts a comment; blank lines
// ignored) on top of `base`. Throws std::invalid_argument on syntax or
// unknown keys, std::runtime_error when the file cannot be read.
TrainingConfig load_config_file(const std::string& path, TrainingConfig base);

}  // namespace qfdp
