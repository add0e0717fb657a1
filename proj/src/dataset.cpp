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

#include "qfdp/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qfdp/serialize.hpp"

namespace qfdp {

namespace {

void shuffle_examples(std::vector<Example>& examples, Rng& rng) {
  for (std::size_t i = examples.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_int(i);
    std::swap(examples[i - 1], examples[j]);
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<Example> generate_synthetic(int n, int d, double separation, Rng& rng) {
  if (n < 2) throw std::invalid_argument("generate_synthetic: n must be >= 2");
  if (d < 4) throw std::invalid_argument("generate_synthetic: d must be >= 4");
  if (!(separation >= 0.0)) {
    throw std::invalid_argument("generate_synthetic: separation must be >= 0");
  }

  std::vector<double> direction(d);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (auto& v : direction) {
      v = rng.normal();
      norm_sq += v * v;
    }
  } while (norm_sq < 1e-24);
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (auto& v : direction) v *= inv_norm;

  const int n_class0 = n - n / 2;
  std::vector<Example> examples;
  examples.reserve(n);
  for (int i = 0; i < n; ++i) {
    Example ex;
    ex.label = i < n_class0 ? 0 : 1;
    const double sign = ex.label == 0 ? -1.0 : 1.0;
    ex.features.resize(d);
    for (int k = 0; k < d; ++k) {
      ex.features[k] = sign * (separation / 2.0) * direction[k] + rng.normal();
    }
    examples.push_back(std::move(ex));
  }
  shuffle_examples(examples, rng);
  return examples;
}

std::vector<Example> read_features_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(name + ": empty file, expected header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "label") {
    throw DataError(name + ":1: header must be f1,...,fd,label");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (header[i] != "f" + std::to_string(i + 1)) {
      throw DataError(name + ":1: feature column " + std::to_string(i + 1) +
                      " must be named f" + std::to_string(i + 1));
    }
  }

  std::vector<Example> examples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = name + ":" + std::to_string(line_no);
    if (fields.size() != d + 1) {
      throw DataError(where + ": expected " + std::to_string(d + 1) +
                      " fields, got " + std::to_string(fields.size()));
    }
    Example ex;
    ex.features.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
      try {
        ex.features.push_back(parse_double(fields[i]));
      } catch (const std::exception& e) {
        throw DataError(where + ": " + e.what());
      }
      if (!std::isfinite(ex.features.back())) {
        throw DataError(where + ": feature is not finite");
      }
    }
    if (fields[d] == "0") ex.label = 0;
    else if (fields[d] == "1") ex.label = 1;
    else throw DataError(where + ": label must be 0 or 1, got '" + fields[d] + "'");
    examples.push_back(std::move(ex));
  }
  return examples;
}

std::vector<Example> load_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  return read_features_csv(in, path);
}

void write_features_csv(const std::vector<Example>& examples, std::ostream& out) {
  if (examples.empty()) throw std::invalid_argument("write_features_csv: no examples");
  const std::size_t d = examples.front().features.size();
  for (std::size_t i = 0; i < d; ++i) out << 'f' << (i + 1) << ',';
  out << "label\n";
  for (const auto& ex : examples) {
    for (std::size_t i = 0; i < d; ++i) out << format_double(ex.features[i]) << ',';
    out << ex.label << '\n';
  }
}

void save_features_csv(const std::vector<Example>& examples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open dataset file for writing: " + path);
  write_features_csv(examples, out);
}

std::pair<std::vector<Example>, std::vector<Example>> split_train_test(
    const std::vector<Example>& examples, double test_fraction, Rng& rng) {
  if (examples.size() < 2) {
    throw std::invalid_argument("split_train_test: need at least 2 examples");
  }
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw std::invalid_argument("split_train_test: test_fraction must be in (0, 1)");
  }
  std::vector<Example> shuffled = examples;
  shuffle_examples(shuffled, rng);
  const auto n = shuffled.size();
  auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(n)));
  n_test = std::max<std::size_t>(1, std::min(n_test, n - 1));
  std::vector<Example> test(shuffled.begin(), shuffled.begin() + static_cast<long>(n_test));
  std::vector<Example> train(shuffled.begin() + static_cast<long>(n_test), shuffled.end());
  return {std::move(train), std::move(test)};
}

}  // namespace qfdp
