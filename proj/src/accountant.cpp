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

#include "qfdp/accountant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qfdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kQuadRelTol = 1e-9;

const std::array<double, 47> kDefaultOrders = {
    1.25, 1.5,  1.75, 2.0,  2.25, 2.5,  2.75, 3.0,  3.25, 3.5,  3.75, 4.0,
    4.25, 4.5,  4.75, 5.0,  5.5,  6.0,  6.5,  7.0,  7.5,  8.0,  9.0,  10.0,
    11.0, 12.0, 14.0, 16.0, 20.0, 24.0, 28.0, 32.0, 40.0, 48.0, 56.0, 64.0,
    96.0, 128.0, 192.0, 256.0, 384.0, 512.0, 1024.0, 2048.0, 4096.0, 1e5, 1e6};

double log_gauss_pdf(double x, double sigma) {
  const double z = x / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * kLog2Pi;
}

// log( (1-q) N(x;0,s) + q N(x;1,s) ) - log( N(x;0,s) ), computed without
// forming either density. Stable for any x because the exponentials only
// appear inside log1p/log-add.
double log_likelihood_ratio(double x, double q, double sigma) {
  const double w = (2.0 * x - 1.0) / (2.0 * sigma * sigma);  // logN1 - logN0
  const double a = std::log1p(-q);
  const double b = std::log(q) + w;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// The Renyi integrands for both adjacency directions share the shape
// N(x;0,sigma) * exp(c * llr(x)) with c = alpha for D(mix || base) and
// c = 1 - alpha for D(base || mix). This returns its logarithm.
double log_integrand(double x, double q, double sigma, double c) {
  return log_gauss_pdf(x, sigma) + c * log_likelihood_ratio(x, q, sigma);
}

// Piecewise adaptive quadrature of exp(log_f) over the knot intervals, with
// the whole integrand rescaled by its sampled maximum so the pieces stay in
// range. Returns log of the integral.
template <typename LogF>
double log_integral_exp(const LogF& log_f, std::vector<double> knots) {
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              knots.end());
  if (knots.size() < 2) throw std::logic_error("log_integral_exp: degenerate knots");

  // Sample for the normalization constant; the true max may sit slightly
  // above, which only costs a benign factor on the rescaled integrand.
  double m = -kInf;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    constexpr int kSamples = 65;
    for (int s = 0; s <= kSamples; ++s) {
      const double x = a + (b - a) * s / kSamples;
      m = std::max(m, log_f(x));
    }
  }
  if (!std::isfinite(m)) return -kInf;

  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto f = [&](double x) {
      const double lf = log_f(x) - m;
      return lf < -745.0 ? 0.0 : std::exp(lf);
    };
    total += Quad::integrate(f, knots[i], knots[i + 1], 15, kQuadRelTol);
  }
  if (!(total > 0.0)) return -kInf;
  return m + std::log(total);
}

// Knots bracketing every feature of the integrand: the Gaussian bulk around
// [0, 1], the likelihood-ratio crossover, and (for c = alpha) the secondary
// bump near x = alpha created by the q-component raised to the alpha-th
// power.
std::vector<double> integration_knots(double q, double sigma, double c) {
  const double pad = 20.0 * sigma + 1.0;
  std::vector<double> knots = {-pad - 1.0, -1.0, 0.0, 0.5, 1.0, 2.0, 2.0 + 8.0 * sigma,
                               2.0 + pad};
  const double crossover = 0.5 + sigma * sigma * (std::log1p(-q) - std::log(q));
  knots.push_back(crossover - 4.0 * sigma);
  knots.push_back(crossover);
  knots.push_back(crossover + 4.0 * sigma);
  if (c > 0.0) {
    const double far = c;  // secondary mode
    knots.push_back((2.0 + 8.0 * sigma + far) / 2.0);
    knots.push_back(far - 8.0 * sigma);
    knots.push_back(far);
    knots.push_back(far + 8.0 * sigma);
    knots.push_back(far + pad);
  }
  const double lo = knots.front();
  const double hi = *std::max_element(knots.begin(), knots.end());
  std::vector<double> clipped;
  for (double k : knots) {
    if (k >= lo && k <= hi) clipped.push_back(k);
  }
  clipped.push_back(hi);
  return clipped;
}

double renyi_direction(double q, double sigma, double alpha, double c) {
  const auto log_f = [&](double x) { return log_integrand(x, q, sigma, c); };
  const double log_i = log_integral_exp(log_f, integration_knots(q, sigma, c));
  return log_i / (alpha - 1.0);
}

}  // namespace

std::span<const double> default_rdp_orders() {
  return {kDefaultOrders.data(), kDefaultOrders.size()};
}

double rdp_step_cost(double q, double sigma, double alpha) {
  if (!(q >= 0.0) || q > 1.0) throw std::invalid_argument("q must be in [0, 1]");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (q == 0.0) return 0.0;
  if (sigma == 0.0) return kInf;
  if (q == 1.0) return alpha / (2.0 * sigma * sigma);

  const double mix_vs_base = renyi_direction(q, sigma, alpha, alpha);
  const double base_vs_mix = renyi_direction(q, sigma, alpha, 1.0 - alpha);
  return std::max(0.0, std::max(mix_vs_base, base_vs_mix));
}

PrivacyLedger PrivacyLedger::create(double q, double sigma, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  PrivacyLedger ledger;
  ledger.q = q;
  ledger.sigma = sigma;
  ledger.delta = delta;
  const auto orders = default_rdp_orders();
  ledger.orders.assign(orders.begin(), orders.end());
  ledger.step_costs.reserve(ledger.orders.size());
  for (double alpha : ledger.orders) {
    ledger.step_costs.push_back(rdp_step_cost(q, sigma, alpha));
  }
  ledger.costs.assign(ledger.orders.size(), 0.0);
  return ledger;
}

void accumulate(PrivacyLedger& ledger, long long steps) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (steps == 0) return;
  for (std::size_t i = 0; i < ledger.costs.size(); ++i) {
    ledger.costs[i] += static_cast<double>(steps) * ledger.step_costs[i];
  }
  ledger.steps += steps;
}

EpsilonResult epsilon_for_delta(const PrivacyLedger& ledger) {
  if (ledger.orders.empty()) throw std::logic_error("epsilon_for_delta: empty order grid");
  const double log_delta = std::log(ledger.delta);
  double best = kInf;
  double best_order = ledger.orders.front();
  for (std::size_t i = 0; i < ledger.orders.size(); ++i) {
    const double a = ledger.orders[i];
    if (!std::isfinite(ledger.costs[i])) continue;
    const double eps = ledger.costs[i] + std::log1p(-1.0 / a) -
                       (log_delta + std::log(a)) / (a - 1.0);
    if (eps < best) {
      best = eps;
      best_order = a;
    }
  }
  if (!std::isfinite(best)) {
    return {kInf, 0.0};
  }
  return {std::max(0.0, best), best_order};
}

EpsilonResult compute_epsilon(double q, double sigma, long long steps, double delta) {
  PrivacyLedger ledger = PrivacyLedger::create(q, sigma, delta);
  accumulate(ledger, steps);
  return epsilon_for_delta(ledger);
}

}  // namespace qfdp
