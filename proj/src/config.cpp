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

#include "qfdp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qfdp/serialize.hpp"

namespace qfdp {

namespace {

int parse_int(const std::string& text) {
  std::size_t pos = 0;
  const int value = std::stoi(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("malformed integer: " + text);
  return value;
}

std::uint64_t parse_u64(const std::string& text) {
  std::size_t pos = 0;
  const unsigned long long value = std::stoull(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("malformed integer: " + text);
  return value;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

void TrainingConfig::validate() const {
  if (dataset != "synthetic" && dataset != "csv") {
    throw std::invalid_argument("dataset must be 'synthetic' or 'csv'");
  }
  if (dataset == "csv" && csv_path.empty()) {
    throw std::invalid_argument("csv_path is required when dataset=csv");
  }
  if (dataset == "synthetic") {
    if (n_examples < 2) throw std::invalid_argument("n_examples must be >= 2");
    if (n_features < 4) throw std::invalid_argument("n_features must be >= 4");
    if (!(separation >= 0.0)) throw std::invalid_argument("separation must be >= 0");
  }
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must be in (0, 1)");
  }
  if (clients < 1) throw std::invalid_argument("clients must be >= 1");
  if (clients_per_round < 1 || clients_per_round > clients) {
    throw std::invalid_argument("clients_per_round must be in [1, clients]");
  }
  if (local_epochs < 1) throw std::invalid_argument("local_epochs must be >= 1");
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (lot_size < 1) throw std::invalid_argument("lot_size must be >= 1");
  if (!(clip_norm > 0.0)) throw std::invalid_argument("clip_norm must be > 0");
  if (!(noise_multiplier >= 0.0)) {
    throw std::invalid_argument("noise_multiplier must be >= 0");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

std::string TrainingConfig::to_key_values() const {
  std::ostringstream out;
  out << "dataset=" << dataset << '\n'
      << "csv_path=" << csv_path << '\n'
      << "n_examples=" << n_examples << '\n'
      << "n_features=" << n_features << '\n'
      << "separation=" << format_double(separation) << '\n'
      << "test_fraction=" << format_double(test_fraction) << '\n'
      << "clients=" << clients << '\n'
      << "clients_per_round=" << clients_per_round << '\n'
      << "local_epochs=" << local_epochs << '\n'
      << "rounds=" << rounds << '\n'
      << "lot_size=" << lot_size << '\n'
      << "clip_norm=" << format_double(clip_norm) << '\n'
      << "noise_multiplier=" << format_double(noise_multiplier) << '\n'
      << "learning_rate=" << format_double(learning_rate) << '\n'
      << "delta=" << format_double(delta) << '\n'
      << "seed=" << seed << '\n'
      << "output_dir=" << output_dir << '\n';
  return out.str();
}

void TrainingConfig::set_key_value(const std::string& key, const std::string& value) {
  try {
    if (key == "dataset") dataset = value;
    else if (key == "csv_path") csv_path = value;
    else if (key == "n_examples") n_examples = parse_int(value);
    else if (key == "n_features") n_features = parse_int(value);
    else if (key == "separation") separation = parse_double(value);
    else if (key == "test_fraction") test_fraction = parse_double(value);
    else if (key == "clients") clients = parse_int(value);
    else if (key == "clients_per_round") clients_per_round = parse_int(value);
    else if (key == "local_epochs") local_epochs = parse_int(value);
    else if (key == "rounds") rounds = parse_int(value);
    else if (key == "lot_size") lot_size = parse_int(value);
    else if (key == "clip_norm") clip_norm = parse_double(value);
    else if (key == "noise_multiplier") noise_multiplier = parse_double(value);
    else if (key == "learning_rate") learning_rate = parse_double(value);
    else if (key == "delta") delta = parse_double(value);
    else if (key == "seed") seed = parse_u64(value);
    else if (key == "output_dir") output_dir = value;
    else throw std::invalid_argument("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for config key '" + key + "': " + value);
  }
}

TrainingConfig load_config_file(const std::string& path, TrainingConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    }
    base.set_key_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace qfdp
