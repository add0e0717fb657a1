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

#include <span>
#include <vector>

namespace qfdp {

// Renyi order grid tracked by every ledger: a dense band across the orders
// where the optimum typically lands, plus large orders so that an empty
// ledger converts to a vanishing epsilon.
std::span<const double> default_rdp_orders();

// Renyi divergence of order `alpha` between the subsampled Gaussian
// mechanism's output distributions on adjacent datasets, per sampled element
// and unit sensitivity. The base distribution is N(0, sigma^2); the mixture
// is (1-q) N(0, sigma^2) + q N(1, sigma^2). The pessimistic maximum over
// both adjacency directions is returned.
//
// Closed form alpha / (2 sigma^2) when q == 1; numeric quadrature otherwise
// (adaptive Gauss-Kronrod in log space, relative tolerance 1e-9).
//
// Edge cases: q == 0 returns 0 (nothing sampled leaks nothing); sigma == 0
// with q > 0 returns +infinity (no privacy). Throws std::invalid_argument
// for q outside [0, 1], sigma < 0, or alpha <= 1.
double rdp_step_cost(double q, double sigma, double alpha);

// Accumulated Renyi costs of a fixed-(q, sigma) mechanism composed step by
// step. Costs at every order are nondecreasing in the step count and exactly
// linear in it.
struct PrivacyLedger {
  double q = 0.0;
  double sigma = 0.0;
  double delta = 1e-5;
  long long steps = 0;
  std::vector<double> orders;
  std::vector<double> step_costs;  // per-step cost at each order
  std::vector<double> costs;       // accumulated cost at each order

  // Precomputes the per-order step costs once; accumulation afterwards is
  // arithmetic only.
  static PrivacyLedger create(double q, double sigma, double delta);
};

void accumulate(PrivacyLedger& ledger, long long steps);

struct EpsilonResult {
  double epsilon = 0.0;
  double order = 0.0;  // the minimizing Renyi order
};

// Converts the accumulated Renyi curve to an (epsilon, delta) statement:
//   epsilon = min over orders of
//     [cost(a) + log1p(-1/a) - (log(delta) + log(a)) / (a - 1)]
// clamped below at 0. Returns +infinity when every tracked cost is infinite
// (sigma == 0 with accumulated steps). Throws std::logic_error on an empty
// order grid.
EpsilonResult epsilon_for_delta(const PrivacyLedger& ledger);

// Convenience: epsilon after `steps` compositions of the (q, sigma)
// mechanism at the given delta.
EpsilonResult compute_epsilon(double q, double sigma, long long steps, double delta);

}  // namespace qfdp
