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

#ifndef ROBSCORE_TRAINING_H_
#define ROBSCORE_TRAINING_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "robscore/classifier.h"
#include "robscore/dataset.h"
#include "robscore/errors.h"
#include "robscore/linear_model.h"
#include "robscore/mlp_model.h"

namespace robscore {

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 200;
  // Mini-batch size; values >= |D| give full-batch gradient descent.
  int batch_size = 64;
  double l2_penalty = 0.0;
  // Controls batch shuffling and MLP initialization only.
  uint64_t seed = 0;

  void Validate() const;
};

// Mean training objective recorded after every epoch.
struct TrainingLog {
  std::vector<double> epoch_objective;
};

// Gradient descent on mean cross-entropy + l2_penalty * |beta|^2 / 2,
// starting from all-zero parameters.
LinearModel TrainLogistic(const Dataset& data, const TrainConfig& cfg,
                          TrainingLog* log = nullptr);

// Weights start uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases at zero.
MlpModel TrainMlp(const Dataset& data, int hidden_width, const TrainConfig& cfg,
                  TrainingLog* log = nullptr);

std::vector<double> Losses(const Classifier& model, const Dataset& data);
std::vector<int> Predictions(const Classifier& model, const Dataset& data);
double Accuracy(const Classifier& model, const Dataset& data);
double MeanLoss(const Classifier& model, const Dataset& data);

// Relative disagreement between the analytic parameter gradient g_a and
// central finite differences g_f, measured as |g_a - g_f|_inf / max(|g_a|_inf,
// |g_f|_inf). Per-entry ratios are useless for entries that are tiny next to the
// rest of the gradient, since there the difference quotient is mostly rounding.
// ReLU kinks within `step` of a pre-activation also break the comparison.
template <Differentiable M>
double GradientCheck(const M& model, const VectorRef& x, int label, double step) {
  if (!(step > 0.0 && step <= 1e-2)) {
    throw ArgumentError("gradient check step must lie in (0, 1e-2]");
  }
  const Vector analytic = model.LossGradient(x, label);
  M probe = model;
  Vector params = model.parameters();
  Vector numeric(params.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + step;
    probe.set_parameters(params);
    const double plus = probe.Loss(x, label);
    params[i] = saved - step;
    probe.set_parameters(params);
    const double minus = probe.Loss(x, label);
    params[i] = saved;
    numeric[i] = (plus - minus) / (2.0 * step);
  }
  const double scale = std::max(analytic.lpNorm<Eigen::Infinity>(),
                                numeric.lpNorm<Eigen::Infinity>());
  if (scale == 0.0) return 0.0;
  return (analytic - numeric).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace robscore

#endif  // ROBSCORE_TRAINING_H_
