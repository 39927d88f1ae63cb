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

#include "robscore/radius.h"

#include <cmath>
#include <limits>

#include "robscore/errors.h"
#include "robscore/io.h"
#include "robscore/parallel.h"

namespace robscore {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void SearchConfig::Validate() const {
  if (directions_per_level < 1) throw ArgumentError("directions_per_level must be >= 1");
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    throw ArgumentError("precision must be > 0");
  }
  if (!(initial_radius > 0.0) || !std::isfinite(initial_radius)) {
    throw ArgumentError("initial_radius must be > 0");
  }
  if (max_doublings < 1 || max_doublings > 1000) {
    throw ArgumentError("max_doublings must lie in 1..1000");
  }
  if (!(precision < std::ldexp(initial_radius, max_doublings))) {
    throw ArgumentError("precision must be below initial_radius * 2^max_doublings");
  }
}

void TradeoffConfig::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (trials < 100) throw ArgumentError("trials must be >= 100");
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    throw ArgumentError("precision must be > 0");
  }
  if (!(initial_scale > 0.0) || !std::isfinite(initial_scale)) {
    throw ArgumentError("initial_scale must be > 0");
  }
  if (max_doublings < 1 || max_doublings > 1000) {
    throw ArgumentError("max_doublings must lie in 1..1000");
  }
}

LinearRadius ExactLinearRadius(const LinearModel& model, const VectorRef& x, int k) {
  CheckInput(model, x);
  CheckLabel(model, k);
  const Vector logits = model.Logits(x);
  const int predicted = ArgmaxLowestIndex(logits);
  if (predicted != k) return {0.0, predicted};

  const auto& beta = model.beta();
  const auto& beta0 = model.beta0();
  const Eigen::Index row = k - 1;
  double best = kInf;
  int achieving = 0;
  bool coincident = false;
  for (Eigen::Index j = 0; j < beta.rows(); ++j) {
    if (j == row) continue;
    const Eigen::VectorXd gap = (beta.row(row) - beta.row(j)).transpose();
    const double norm = gap.norm();
    if (norm == 0.0) {
      if (beta0[row] == beta0[j]) coincident = true;
      continue;
    }
    const double dist = (gap.dot(x) + (beta0[row] - beta0[j])) / norm;
    if (dist < best) {
      best = dist;
      achieving = static_cast<int>(j) + 1;
    }
  }
  if (achieving == 0) {
    if (coincident) {
      throw DegenerateModelError("every competing class row equals row " +
                                 std::to_string(k));
    }
    return {kInf, 0};
  }
  return {std::max(0.0, best), achieving};
}

Vector SphereDirection(int dim, RandomStream& rng) {
  Vector v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.Normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

Vector BallPointL2(int dim, RandomStream& rng) {
  const Vector dir = SphereDirection(dim, rng);
  return dir * std::pow(rng.Uniform(), 1.0 / dim);
}

Vector BallPointLinf(int dim, RandomStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.Uniform(-1.0, 1.0);
  return v;
}

RadiusEstimate EstimateRadiusBlackBox(const Classifier& model, const VectorRef& x,
                                      int label, const SearchConfig& cfg,
                                      uint64_t sample_index,
                                      std::vector<ProbeRecord>* trace) {
  cfg.Validate();
  CheckInput(model, x);
  CheckLabel(model, label);
  RadiusEstimate est;
  est.evaluations = 1;
  if (model.Predict(x) != label) return est;

  RandomStream rng(cfg.seed, "radius", sample_index);
  const int d = model.input_dim();
  Vector probe_point(d);
  auto probe = [&](double radius) {
    for (int t = 0; t < cfg.directions_per_level; ++t) {
      const Vector dir = SphereDirection(d, rng);
      probe_point = x + radius * dir;
      ++est.evaluations;
      if (model.Predict(probe_point) != label) {
        if (trace) trace->push_back({radius, true, radius * dir});
        return true;
      }
    }
    if (trace) trace->push_back({radius, false, Vector()});
    return false;
  };

  double lower = 0.0;
  double upper = kInf;
  double radius = cfg.initial_radius;
  for (int j = 0; j <= cfg.max_doublings; ++j, radius *= 2.0) {
    if (probe(radius)) {
      upper = radius;
      break;
    }
    lower = radius;
  }
  est.lower = lower;
  est.upper = upper;
  if (std::isinf(upper)) {
    est.value = kInf;
    return est;
  }
  while (upper - lower > 2.0 * cfg.precision) {
    const double mid = 0.5 * (lower + upper);
    if (mid <= lower || mid >= upper) break;
    if (probe(mid)) {
      upper = mid;
    } else {
      lower = mid;
    }
  }
  est.lower = lower;
  est.upper = upper;
  est.value = 0.5 * (lower + upper);
  return est;
}

std::vector<RadiusEstimate> BatchRadii(const Classifier& model, const Dataset& data,
                                       const SearchConfig& cfg, int workers) {
  cfg.Validate();
  std::vector<RadiusEstimate> out(data.size());
  ParallelFor(data.size(), workers, [&](std::size_t i) {
    try {
      out[i] = EstimateRadiusBlackBox(model, data[i].features, data[i].label, cfg, i);
    } catch (const ArgumentError& e) {
      throw ArgumentError("sample " + std::to_string(i) + ": " + e.what());
    }
  });
  return out;
}

std::vector<RadiusEstimate> ModelRadii(const AnyModel& model, const Dataset& data,
                                       const SearchConfig& cfg, int workers) {
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    std::vector<RadiusEstimate> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      try {
        const double r = ExactLinearRadius(*lin, data[i].features, data[i].label).radius;
        out[i] = {r, r, r, 0};
      } catch (const ArgumentError& e) {
        throw ArgumentError("sample " + std::to_string(i) + ": " + e.what());
      }
    }
    return out;
  }
  return BatchRadii(AsClassifier(model), data, cfg, workers);
}

namespace {

Eigen::MatrixXd NoiseDraws(int dim, NoiseBall ball, int trials, uint64_t seed,
                           uint64_t sample_index) {
  RandomStream rng(seed, "tradeoff", sample_index);
  Eigen::MatrixXd draws(dim, trials);
  for (int t = 0; t < trials; ++t) {
    draws.col(t) = ball == NoiseBall::kL2 ? BallPointL2(dim, rng) : BallPointLinf(dim, rng);
  }
  return draws;
}

int CountFailures(const Classifier& model, const VectorRef& x, int label,
                  const Eigen::MatrixXd& draws, double eps) {
  int failures = 0;
  Vector point(x.size());
  for (Eigen::Index t = 0; t < draws.cols(); ++t) {
    point = x + eps * draws.col(t);
    failures += model.Predict(point) != label;
  }
  return failures;
}

}  // namespace

FailureEstimate MisclassificationProbability(const Classifier& model,
                                             const VectorRef& x, int label,
                                             double eps, NoiseBall ball, int trials,
                                             uint64_t seed, uint64_t sample_index) {
  CheckInput(model, x);
  CheckLabel(model, label);
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ArgumentError("eps must be >= 0");
  const auto draws = NoiseDraws(model.input_dim(), ball, trials, seed, sample_index);
  const int failures = CountFailures(model, x, label, draws, eps);
  FailureEstimate out;
  out.trials = trials;
  out.probability = static_cast<double>(failures) / trials;
  out.standard_error = std::sqrt(out.probability * (1.0 - out.probability) / trials);
  return out;
}

double EstimateTradeoff(const Classifier& model, const VectorRef& x, int label,
                        const TradeoffConfig& cfg, uint64_t sample_index) {
  cfg.Validate();
  CheckInput(model, x);
  CheckLabel(model, label);
  if (model.Predict(x) != label) return 0.0;

  const auto draws =
      NoiseDraws(model.input_dim(), cfg.ball, cfg.trials, cfg.seed, sample_index);
  auto acceptable = [&](double eps) {
    const int failures = CountFailures(model, x, label, draws, eps);
    return static_cast<double>(failures) / cfg.trials <= cfg.alpha;
  };

  double lower = 0.0;
  double upper = kInf;
  double eps = cfg.initial_scale;
  for (int j = 0; j <= cfg.max_doublings; ++j, eps *= 2.0) {
    if (!acceptable(eps)) {
      upper = eps;
      break;
    }
    lower = eps;
  }
  if (std::isinf(upper)) return kInf;
  while (upper - lower > cfg.precision) {
    const double mid = 0.5 * (lower + upper);
    if (mid <= lower || mid >= upper) break;
    if (acceptable(mid)) {
      lower = mid;
    } else {
      upper = mid;
    }
  }
  return lower;
}

std::string RadiiCsv(const Classifier& model, const Dataset& data,
                     std::span<const RadiusEstimate> radii) {
  if (radii.size() != data.size()) {
    throw ArgumentError("radius count differs from dataset size");
  }
  std::string out =
      "sample_index,label,predicted,loss,radius_value,radius_lower,radius_upper,"
      "evaluations\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Sample& s = data[i];
    out += std::to_string(i) + "," + std::to_string(s.label) + "," +
           std::to_string(model.Predict(s.features)) + "," +
           FormatDouble(model.Loss(s.features, s.label)) + "," +
           FormatDouble(radii[i].value) + "," + FormatDouble(radii[i].lower) + "," +
           FormatDouble(radii[i].upper) + "," + std::to_string(radii[i].evaluations) +
           "\n";
  }
  return out;
}

}  // namespace robscore
