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

#include "robscore/training.h"

#include <numeric>
#include <set>
#include <string>

#include "robscore/rng.h"

namespace robscore {

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ArgumentError("learning_rate must be > 0");
  }
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  if (!(l2_penalty >= 0.0) || !std::isfinite(l2_penalty)) {
    throw ArgumentError("l2_penalty must be >= 0");
  }
}

namespace {

void CheckTrainable(const Dataset& data) {
  if (data.size() < static_cast<std::size_t>(data.num_classes())) {
    throw ArgumentError("training needs at least K samples");
  }
  std::set<int> labels;
  for (const Sample& s : data.samples()) labels.insert(s.label);
  if (labels.size() < 2) throw ArgumentError("training data contains a single class");
}

double Objective(const DifferentiableClassifier& model, const Dataset& data,
                 const Vector& mask, double l2) {
  const Vector p = model.parameters();
  return MeanLoss(model, data) + 0.5 * l2 * mask.cwiseProduct(p).squaredNorm();
}

void Fit(DifferentiableClassifier& model, const Dataset& data, const TrainConfig& cfg,
         TrainingLog* log) {
  const std::size_t n = data.size();
  const std::size_t batch = std::min<std::size_t>(cfg.batch_size, n);
  const Vector mask = model.weight_mask();
  Vector params = model.parameters();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Vector grad(params.size());

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (batch < n) {
      RandomStream rng(cfg.seed, "shuffle", static_cast<uint64_t>(epoch));
      std::shuffle(order.begin(), order.end(), rng.engine());
    }
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      grad.setZero();
      for (std::size_t t = start; t < stop; ++t) {
        const Sample& s = data[order[t]];
        grad += model.LossGradient(s.features, s.label);
      }
      grad /= static_cast<double>(stop - start);
      if (cfg.l2_penalty > 0.0) grad += cfg.l2_penalty * mask.cwiseProduct(params);
      params -= cfg.learning_rate * grad;
      model.set_parameters(params);
    }
    const double objective = params.allFinite()
                                 ? Objective(model, data, mask, cfg.l2_penalty)
                                 : std::nan("");
    if (!std::isfinite(objective)) {
      throw NumericError("training diverged at epoch " + std::to_string(epoch));
    }
    if (log) log->epoch_objective.push_back(objective);
  }
}

}  // namespace

LinearModel TrainLogistic(const Dataset& data, const TrainConfig& cfg,
                          TrainingLog* log) {
  cfg.Validate();
  CheckTrainable(data);
  LinearModel model = LinearModel::Zero(data.num_classes(), data.dim());
  Fit(model, data, cfg, log);
  return model;
}

MlpModel TrainMlp(const Dataset& data, int hidden_width, const TrainConfig& cfg,
                  TrainingLog* log) {
  cfg.Validate();
  if (hidden_width < 1) throw ArgumentError("hidden width must be >= 1");
  CheckTrainable(data);
  const int d = data.dim();
  const int k = data.num_classes();
  RandomStream rng(cfg.seed, "mlp-init", 0);
  auto uniform_matrix = [&rng](int rows, int cols) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) m(i, j) = rng.Uniform(-bound, bound);
    }
    return m;
  };
  Eigen::MatrixXd w1 = uniform_matrix(hidden_width, d);
  Eigen::MatrixXd w2 = uniform_matrix(k, hidden_width);
  MlpModel model(std::move(w1), Eigen::VectorXd::Zero(hidden_width), std::move(w2),
                 Eigen::VectorXd::Zero(k));
  Fit(model, data, cfg, log);
  return model;
}

std::vector<double> Losses(const Classifier& model, const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size());
  for (const Sample& s : data.samples()) out.push_back(model.Loss(s.features, s.label));
  return out;
}

std::vector<int> Predictions(const Classifier& model, const Dataset& data) {
  std::vector<int> out;
  out.reserve(data.size());
  for (const Sample& s : data.samples()) {
    CheckInput(model, s.features);
    out.push_back(model.Predict(s.features));
  }
  return out;
}

double Accuracy(const Classifier& model, const Dataset& data) {
  if (data.empty()) throw ArgumentError("accuracy of an empty dataset");
  const auto pred = Predictions(model, data);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) hits += pred[i] == data[i].label;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

double MeanLoss(const Classifier& model, const Dataset& data) {
  if (data.empty()) throw ArgumentError("mean loss of an empty dataset");
  const auto losses = Losses(model, data);
  return std::accumulate(losses.begin(), losses.end(), 0.0) /
         static_cast<double>(losses.size());
}

}  // namespace robscore
