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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfdp/model.hpp"
#include "qfdp/rng.hpp"

namespace qfdp {

// Malformed or unreadable dataset input. Distinguished from configuration
// errors so the CLI can map it to its own exit code.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Balanced two-cluster dataset: class means at +/-(separation/2) u for a
// random unit direction u, unit covariance, labels by cluster, order
// shuffled. n odd puts the extra example in class 0.
std::vector<Example> generate_synthetic(int n, int d, double separation, Rng& rng);

// CSV with header f1,...,fd,label; features are decimal floats, label is 0
// or 1. Parse failures throw DataError naming the 1-based line.
std::vector<Example> load_features_csv(const std::string& path);
std::vector<Example> read_features_csv(std::istream& in, const std::string& name);

void save_features_csv(const std::vector<Example>& examples, const std::string& path);
void write_features_csv(const std::vector<Example>& examples, std::ostream& out);

// Shuffles a copy of `examples` and splits off round(fraction * n) test
// examples (at least 1, at most n - 1). Returns {train, test}.
std::pair<std::vector<Example>, std::vector<Example>> split_train_test(
    const std::vector<Example>& examples, double test_fraction, Rng& rng);

}  // namespace qfdp
