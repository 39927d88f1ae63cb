/* Copyright 2026 The Robscore Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ROBSCORE_RADIUS_H_
#define ROBSCORE_RADIUS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "robscore/classifier.h"
#include "robscore/dataset.h"
#include "robscore/linear_model.h"
#include "robscore/model_io.h"
#include "robscore/rng.h"

namespace robscore {

// Bracketed radius of robustness. `upper` is +inf when no adversarial
// direction was found within the search scale.
struct RadiusEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t evaluations = 0;
};

struct SearchConfig {
  int directions_per_level = 5000;
  // Absolute half-width target of the final bracket.
  double precision = 0.5;
  double initial_radius = 1.0;
  int max_doublings = 40;
  uint64_t seed = 0;

  void Validate() const;
};

enum class NoiseBall { kL2, kLinf };

struct TradeoffConfig {
  // Tolerated misclassification probability.
  double alpha = 0.05;
  // Monte-Carlo draws per probed noise scale.
  int trials = 1000;
  NoiseBall ball = NoiseBall::kL2;
  double precision = 1e-3;
  double initial_scale = 1.0;
  int max_doublings = 40;
  uint64_t seed = 0;

  void Validate() const;
};

struct LinearRadius {
  double radius = 0.0;
  // Competing class whose hyperplane is nearest (1-based); the predicted
  // class when x is misclassified.
  int achieving_class = 0;
};

// Distance from x to the nearest pairwise decision hyperplane of class k, or
// 0 when x is not classified as k. Competitors with beta_m == beta_k never
// cross (or coincide everywhere) and are skipped.
LinearRadius ExactLinearRadius(const LinearModel& model, const VectorRef& x, int k);

Vector SphereDirection(int dim, RandomStream& rng);
Vector BallPointL2(int dim, RandomStream& rng);
Vector BallPointLinf(int dim, RandomStream& rng);

// One probe of the search: `radius` and whether a misclassifying direction
// was found there (the first one, if so).
struct ProbeRecord {
  double radius = 0.0;
  bool adversarial_found = false;
  Vector witness;
};

// Randomized dichotomy over the L2 radius: doubling from initial_radius until
// some random direction misclassifies, then bisection on [lower, upper] with
// fresh directions per probe. The random stream is keyed by
// (cfg.seed, sample_index).
RadiusEstimate EstimateRadiusBlackBox(const Classifier& model, const VectorRef& x,
                                      int label, const SearchConfig& cfg,
                                      uint64_t sample_index = 0,
                                      std::vector<ProbeRecord>* trace = nullptr);

std::vector<RadiusEstimate> BatchRadii(const Classifier& model, const Dataset& data,
                                       const SearchConfig& cfg, int workers);

// Exact radii for linear models, black-box estimates for anything else.
std::vector<RadiusEstimate> ModelRadii(const AnyModel& model, const Dataset& data,
                                       const SearchConfig& cfg, int workers);

struct FailureEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  int trials = 0;
};

// Monte-Carlo estimate of P[f(x + eps Z) != label] with Z uniform on the unit
// ball. Draws come from the (seed, sample_index) tradeoff stream.
FailureEstimate MisclassificationProbability(const Classifier& model,
                                             const VectorRef& x, int label,
                                             double eps, NoiseBall ball, int trials,
                                             uint64_t seed, uint64_t sample_index = 0);

// Largest noise scale whose estimated misclassification probability is
// <= alpha, to within cfg.precision. One set of noise draws is shared by all
// probed scales. Returns +inf when the cap is reached, 0 for misclassified x.
double EstimateTradeoff(const Classifier& model, const VectorRef& x, int label,
                        const TradeoffConfig& cfg, uint64_t sample_index = 0);

// Rows: sample_index,label,predicted,loss,radius_value,radius_lower,
// radius_upper,evaluations.
std::string RadiiCsv(const Classifier& model, const Dataset& data,
                     std::span<const RadiusEstimate> radii);

}  // namespace robscore

#endif  // ROBSCORE_RADIUS_H_
