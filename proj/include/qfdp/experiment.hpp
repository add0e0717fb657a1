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

#include <iosfwd>
#include <string>
#include <vector>

#include "qfdp/config.hpp"
#include "qfdp/federation.hpp"

namespace qfdp {

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitRuntimeError = 3;

void write_metrics_csv(const std::vector<MetricsRow>& history, std::ostream& out);
void write_metrics_csv(const std::vector<MetricsRow>& history, const std::string& path);

// Resolved config plus seed and final epsilon; rewriting the manifest body
// as a config file reproduces the run.
std::string manifest_text(const TrainingConfig& config, double final_epsilon);

// Loads or synthesizes the dataset named by `config`.
std::vector<Example> load_dataset(const TrainingConfig& config, const Rng& master);

// Runs one training experiment end to end and writes metrics.csv, model.txt,
// and manifest.txt (with the given basename suffix, e.g. "_sigma1") into
// config.output_dir. Returns a CLI exit code instead of throwing; `log`
// receives progress lines and diagnostics.
int run_experiment(const TrainingConfig& config, std::ostream& log,
                   const std::string& suffix = "");

}  // namespace qfdp
