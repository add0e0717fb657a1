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

#include "qfdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qfdp/serialize.hpp"

namespace qfdp {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

void check_dimension(const HybridModel& model, std::span<const double> features) {
  if (static_cast<int>(features.size()) != model.n_features) {
    throw std::invalid_argument(
        "feature dimension " + std::to_string(features.size()) +
        " does not match model dimension " + std::to_string(model.n_features));
  }
}

// Stable softmax over two logits.
std::array<double, 2> softmax2(double l0, double l1) {
  const double m = std::max(l0, l1);
  const double e0 = std::exp(l0 - m);
  const double e1 = std::exp(l1 - m);
  const double z = e0 + e1;
  return {e0 / z, e1 / z};
}

}  // namespace

HybridModel initialize_model(const std::vector<Example>& train, Rng rng) {
  if (train.empty()) throw std::invalid_argument("initialize_model: empty training split");
  const int d = static_cast<int>(train.front().features.size());
  if (d < kVqcQubits) {
    throw std::invalid_argument("initialize_model: need at least " +
                                std::to_string(kVqcQubits) + " features, got " +
                                std::to_string(d));
  }
  for (const auto& ex : train) {
    if (static_cast<int>(ex.features.size()) != d) {
      throw std::invalid_argument("initialize_model: inconsistent feature dimensions");
    }
  }

  HybridModel model;
  model.n_features = d;

  // Row 0: class-mean-difference direction on the training split, the frozen
  // stand-in for a pretrained discriminative feature extractor. Falls back to
  // a random direction when the split is single-class or the means coincide.
  std::vector<double> diff(d, 0.0);
  {
    std::vector<double> mean0(d, 0.0), mean1(d, 0.0);
    std::size_t n0 = 0, n1 = 0;
    for (const auto& ex : train) {
      auto& m = ex.label == 0 ? mean0 : mean1;
      (ex.label == 0 ? n0 : n1)++;
      for (int i = 0; i < d; ++i) m[i] += ex.features[i];
    }
    if (n0 > 0 && n1 > 0) {
      for (int i = 0; i < d; ++i) {
        diff[i] = mean1[i] / static_cast<double>(n1) - mean0[i] / static_cast<double>(n0);
      }
    }
  }

  for (int row = 0; row < kVqcQubits; ++row) {
    std::vector<double> v;
    if (row == 0 && norm2(diff) > 1e-12) {
      v = diff;
    } else {
      v.resize(d);
      for (auto& x : v) x = rng.normal();
    }
    // Gram-Schmidt against earlier rows; redraw on a degenerate vector.
    for (;;) {
      for (int prev = 0; prev < row; ++prev) {
        const double p = dot(v, model.reducer[prev]);
        for (int i = 0; i < d; ++i) v[i] -= p * model.reducer[prev][i];
      }
      const double n = norm2(v);
      if (n > 1e-12) {
        for (auto& x : v) x /= n;
        break;
      }
      for (auto& x : v) x = rng.normal();
    }
    model.reducer[row] = std::move(v);
  }

  // Standardization constants on the training split. The outputs are scaled
  // to unit variance and shifted to an operating point of +1 rather than 0:
  // the circuit's readouts are exactly invariant under global negation of
  // its inputs (the encoding's Ry is odd and its Rz even, and the resulting
  // Z-string commutes with the measured qubits), so a zero-centered range
  // would erase every linearly separable sign component. Pretrained-network
  // features, which this reducer stands in for, live in a nonnegative range
  // for the same practical reason.
  for (int row = 0; row < kVqcQubits; ++row) {
    double mean = 0.0;
    for (const auto& ex : train) mean += dot(ex.features, model.reducer[row]);
    mean /= static_cast<double>(train.size());
    double var = 0.0;
    for (const auto& ex : train) {
      const double y = dot(ex.features, model.reducer[row]) - mean;
      var += y * y;
    }
    var /= static_cast<double>(train.size());
    const double scale = var > 1e-24 ? std::sqrt(var) : 1.0;
    model.feature_shift[row] = mean - scale;  // reduced output = z-score + 1
    model.feature_scale[row] = scale;
  }

  for (auto& angle : model.vqc.angles) angle = -0.1 + 0.2 * rng.uniform();
  for (auto& w : model.head) w = -0.5 + 1.0 * rng.uniform();
  model.bias = {0.0, 0.0};
  return model;
}

std::array<double, kTrainableCount> trainable(const HybridModel& model) {
  std::array<double, kTrainableCount> values{};
  std::copy(model.vqc.angles.begin(), model.vqc.angles.end(), values.begin());
  std::copy(model.head.begin(), model.head.end(), values.begin() + kVqcParamCount);
  values[kVqcParamCount + 4] = model.bias[0];
  values[kVqcParamCount + 5] = model.bias[1];
  return values;
}

void set_trainable(HybridModel& model, const std::array<double, kTrainableCount>& values) {
  std::copy(values.begin(), values.begin() + kVqcParamCount, model.vqc.angles.begin());
  std::copy(values.begin() + kVqcParamCount, values.begin() + kVqcParamCount + 4,
            model.head.begin());
  model.bias[0] = values[kVqcParamCount + 4];
  model.bias[1] = values[kVqcParamCount + 5];
}

VqcInput reduce_features(const HybridModel& model, std::span<const double> features) {
  check_dimension(model, features);
  VqcInput x{};
  for (int row = 0; row < kVqcQubits; ++row) {
    x[row] = (dot(features, model.reducer[row]) - model.feature_shift[row]) /
             model.feature_scale[row];
  }
  return x;
}

std::array<double, 2> model_forward(const HybridModel& model,
                                    std::span<const double> features) {
  const VqcInput x = reduce_features(model, features);
  const auto [z0, z1] = vqc_forward(x, model.vqc);
  const double l0 = model.head[0] * z0 + model.head[1] * z1 + model.bias[0];
  const double l1 = model.head[2] * z0 + model.head[3] * z1 + model.bias[1];
  return softmax2(l0, l1);
}

LossGradient loss_and_gradient(const HybridModel& model, const Example& example) {
  if (example.label != 0 && example.label != 1) {
    throw std::invalid_argument("label must be 0 or 1");
  }
  const VqcInput x = reduce_features(model, example.features);
  const auto [z0, z1] = vqc_forward(x, model.vqc);
  const double l0 = model.head[0] * z0 + model.head[1] * z1 + model.bias[0];
  const double l1 = model.head[2] * z0 + model.head[3] * z1 + model.bias[1];
  const auto p = softmax2(l0, l1);

  LossGradient result;
  result.loss = -std::log(std::max(p[example.label], 1e-300));

  // d loss / d logit_c = p_c - [c == label]
  const std::array<double, 2> dlogit = {p[0] - (example.label == 0 ? 1.0 : 0.0),
                                        p[1] - (example.label == 1 ? 1.0 : 0.0)};
  const double dz0 = dlogit[0] * model.head[0] + dlogit[1] * model.head[2];
  const double dz1 = dlogit[0] * model.head[1] + dlogit[1] * model.head[3];

  const auto [g0, g1] = vqc_gradient_pair(x, model.vqc);
  for (int j = 0; j < kVqcParamCount; ++j) {
    result.gradient[j] = dz0 * g0[j] + dz1 * g1[j];
  }
  result.gradient[kVqcParamCount + 0] = dlogit[0] * z0;
  result.gradient[kVqcParamCount + 1] = dlogit[0] * z1;
  result.gradient[kVqcParamCount + 2] = dlogit[1] * z0;
  result.gradient[kVqcParamCount + 3] = dlogit[1] * z1;
  result.gradient[kVqcParamCount + 4] = dlogit[0];
  result.gradient[kVqcParamCount + 5] = dlogit[1];
  return result;
}

EvalResult evaluate(const HybridModel& model, const std::vector<Example>& dataset) {
  if (dataset.empty()) throw std::invalid_argument("evaluate: empty dataset");
  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (const auto& ex : dataset) {
    const auto p = model_forward(model, ex.features);
    loss_sum += -std::log(std::max(p[ex.label], 1e-300));
    const int predicted = p[1] > p[0] ? 1 : 0;  // tie goes to label 0
    if (predicted == ex.label) ++correct;
  }
  const double n = static_cast<double>(dataset.size());
  return {loss_sum / n, static_cast<double>(correct) / n};
}

void save_model(const HybridModel& model, std::ostream& out) {
  out << "n_features=" << model.n_features << '\n';
  for (int row = 0; row < kVqcQubits; ++row) {
    out << "reducer_row" << row << '=' << format_doubles(model.reducer[row]) << '\n';
  }
  out << "feature_shift=" << format_doubles(model.feature_shift) << '\n';
  out << "feature_scale=" << format_doubles(model.feature_scale) << '\n';
  out << "vqc_angles=" << format_doubles(model.vqc.angles) << '\n';
  out << "head_weights=" << format_doubles(model.head) << '\n';
  out << "head_bias=" << format_doubles(model.bias) << '\n';
}

void save_model(const HybridModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open model file for writing: " + path);
  save_model(model, out);
}

namespace {

std::vector<double> expect_field(std::istream& in, const std::string& key,
                                 std::size_t count) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("model file: missing " + key);
  const auto eq = line.find('=');
  if (eq == std::string::npos || line.substr(0, eq) != key) {
    throw std::runtime_error("model file: expected key '" + key + "', got '" +
                             line.substr(0, eq) + "'");
  }
  auto values = parse_doubles(line.substr(eq + 1));
  if (values.size() != count) {
    throw std::runtime_error("model file: key '" + key + "' expects " +
                             std::to_string(count) + " values, got " +
                             std::to_string(values.size()));
  }
  return values;
}

}  // namespace

HybridModel load_model(std::istream& in) {
  HybridModel model;
  const auto nf = expect_field(in, "n_features", 1);
  model.n_features = static_cast<int>(nf[0]);
  if (model.n_features < kVqcQubits) {
    throw std::runtime_error("model file: invalid n_features");
  }
  for (int row = 0; row < kVqcQubits; ++row) {
    model.reducer[row] = expect_field(in, "reducer_row" + std::to_string(row),
                                      static_cast<std::size_t>(model.n_features));
  }
  auto copy_into = [](const std::vector<double>& src, auto& dst) {
    std::copy(src.begin(), src.end(), dst.begin());
  };
  copy_into(expect_field(in, "feature_shift", kVqcQubits), model.feature_shift);
  copy_into(expect_field(in, "feature_scale", kVqcQubits), model.feature_scale);
  copy_into(expect_field(in, "vqc_angles", kVqcParamCount), model.vqc.angles);
  copy_into(expect_field(in, "head_weights", 4), model.head);
  copy_into(expect_field(in, "head_bias", 2), model.bias);
  return model;
}

HybridModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace qfdp
