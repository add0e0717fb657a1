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

#include "qfdp/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qfdp/dataset.hpp"
#include "qfdp/serialize.hpp"

namespace qfdp {

void write_metrics_csv(const std::vector<MetricsRow>& history, std::ostream& out) {
  out << "round,epsilon,train_loss,test_loss,test_accuracy,wall_seconds\n";
  for (const auto& row : history) {
    out << row.round << ',' << format_double(row.epsilon) << ','
        << format_double(row.train_loss) << ',' << format_double(row.test_loss) << ','
        << format_double(row.test_accuracy) << ',' << format_double(row.wall_seconds)
        << '\n';
  }
}

void write_metrics_csv(const std::vector<MetricsRow>& history, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open metrics file for writing: " + path);
  write_metrics_csv(history, out);
}

std::string manifest_text(const TrainingConfig& config, double final_epsilon) {
  std::ostringstream out;
  out << config.to_key_values();
  out << "final_epsilon=" << format_double(final_epsilon) << '\n';
  return out.str();
}

std::vector<Example> load_dataset(const TrainingConfig& config, const Rng& master) {
  if (config.dataset == "csv") {
    auto examples = load_features_csv(config.csv_path);
    if (examples.empty()) throw DataError(config.csv_path + ": no examples");
    return examples;
  }
  Rng data_rng = master.child(streams::kData);
  return generate_synthetic(config.n_examples, config.n_features, config.separation,
                            data_rng);
}

int run_experiment(const TrainingConfig& config, std::ostream& log,
                   const std::string& suffix) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const Rng master(config.seed);
    const auto dataset = load_dataset(config, master);
    const auto result = run_training(config, dataset, master);
    if (result.dropped_examples > 0) {
      log << "warning: dropped " << result.dropped_examples
          << " examples so all client shards have equal size\n";
    }

    std::filesystem::create_directories(config.output_dir);
    const auto path = [&](const std::string& stem, const std::string& ext) {
      return config.output_dir + "/" + stem + suffix + ext;
    };
    write_metrics_csv(result.history, path("metrics", ".csv"));
    save_model(result.model, path("model", ".txt"));
    {
      const std::string manifest_path = path("manifest", ".txt");
      std::ofstream out(manifest_path);
      if (!out) throw std::runtime_error("cannot write manifest: " + manifest_path);
      out << manifest_text(config, result.final_epsilon);
    }

    if (config.noise_multiplier == 0.0) {
      log << "final epsilon: non-private (noise_multiplier = 0)\n";
    } else {
      log << "final epsilon: " << format_double(result.final_epsilon) << " at order "
          << format_double(result.final_epsilon_order) << " (delta "
          << format_double(config.delta) << ")\n";
    }
    if (!result.history.empty()) {
      const auto& last = result.history.back();
      log << "final test accuracy: " << format_double(last.test_accuracy)
          << ", test loss: " << format_double(last.test_loss) << '\n';
    }
    log << "outputs in " << config.output_dir << '\n';
    return kExitOk;
  } catch (const DataError& e) {
    log << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    log << "runtime error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace qfdp
