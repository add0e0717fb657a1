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

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qfdp/rng.hpp"
#include "qfdp/vqc.hpp"

namespace qfdp {

struct Example {
  std::vector<double> features;
  int label = 0;  // 0 or 1
};

inline constexpr int kTrainableCount = kVqcParamCount + 4 + 2;  // 18

// Binary classifier: frozen linear feature reducer (d -> 4), quantum circuit
// readout, then a trainable 2x2 affine head with softmax.
//
// The reducer stands in for a frozen pretrained feature extractor: its first
// row is the class-mean-difference direction estimated on the training split,
// the remaining rows are random directions orthonormalized against it, and
// each output is shifted/scaled to zero mean and unit variance on the
// training split. It never changes after construction; training touches only
// the 18 trainable parameters.
//
// Trainable parameter order (used by trainable()/set_trainable() and all
// gradients): [vqc angles row-major (12), head weights row-major (4),
// head bias (2)].
struct HybridModel {
  int n_features = 0;
  std::array<std::vector<double>, kVqcQubits> reducer;  // rows of length n_features
  std::array<double, kVqcQubits> feature_shift{};
  std::array<double, kVqcQubits> feature_scale{};
  VqcParameters vqc;
  std::array<double, 4> head{};  // row-major 2x2
  std::array<double, 2> bias{};
};

// Builds a model for `train`: fits the frozen reducer on the split and draws
// initial trainable parameters (vqc angles uniform on (-0.1, 0.1), head
// weights uniform on (-0.5, 0.5), zero bias) from `rng`.
HybridModel initialize_model(const std::vector<Example>& train, Rng rng);

std::array<double, kTrainableCount> trainable(const HybridModel& model);
void set_trainable(HybridModel& model, const std::array<double, kTrainableCount>& values);

// Frozen reducer output for one feature vector.
VqcInput reduce_features(const HybridModel& model, std::span<const double> features);

// Class probabilities; nonnegative, summing to 1. Throws
// std::invalid_argument on a feature-dimension mismatch.
std::array<double, 2> model_forward(const HybridModel& model,
                                    std::span<const double> features);

struct LossGradient {
  double loss = 0.0;
  std::array<double, kTrainableCount> gradient{};
};

// Cross-entropy loss -log p_label for one example, plus its gradient with
// respect to the trainable parameters. The quantum part of the chain rule
// uses the parameter-shift gradients of both readouts.
LossGradient loss_and_gradient(const HybridModel& model, const Example& example);

struct EvalResult {
  double mean_loss = 0.0;
  double accuracy = 0.0;
};

// Mean loss and accuracy over a dataset. Prediction is the argmax
// probability; an exact tie predicts label 0. Throws on an empty dataset.
EvalResult evaluate(const HybridModel& model, const std::vector<Example>& dataset);

// Flat text serialization; round-trips bit-exactly.
void save_model(const HybridModel& model, std::ostream& out);
void save_model(const HybridModel& model, const std::string& path);
HybridModel load_model(std::istream& in);
HybridModel load_model(const std::string& path);

}  // namespace qfdp
