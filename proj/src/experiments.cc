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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "robscore/errors.h"
#include "robscore/experiments.h"
#include "robscore/parallel.h"
#include "robscore/training.h"

namespace robscore {

LinearModel BaselineClassifier(const GaussianSpec& spec) {
  if (spec.mean_a.size() == 0 || spec.mean_a.size() != spec.mean_b.size()) {
    throw ArgumentError("baseline needs two means of equal dimension");
  }
  const Eigen::VectorXd gap = spec.mean_b - spec.mean_a;
  const double norm = gap.norm();
  if (norm == 0.0) throw DegenerateModelError("baseline undefined for equal means");
  const double offset =
      -(spec.mean_b.squaredNorm() - spec.mean_a.squaredNorm()) / (2.0 * norm);
  return LinearModel::Binomial(gap / norm, offset);
}

double ClassifierDistance(const LinearModel& a, const LinearModel& b) {
  if (a.num_classes() != 2 || b.num_classes() != 2) {
    throw ArgumentError("classifier distance is defined for binomial models");
  }
  if (a.input_dim() != b.input_dim()) {
    throw ArgumentError("classifier distance between models of different dimension");
  }
  return (b.BinomialWeights() - a.BinomialWeights()).norm() +
         std::abs(b.BinomialOffset() - a.BinomialOffset());
}

LinearModel SampleClassifierAtDistance(const LinearModel& baseline, double distance,
                                       RandomStream& rng) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw ArgumentError("distance must be >= 0");
  }
  const double theta = rng.Uniform();
  const Vector dir = SphereDirection(baseline.input_dim(), rng);
  const double sign = rng.Coin() ? 1.0 : -1.0;
  const Vector w = baseline.BinomialWeights() + (1.0 - theta) * distance * dir;
  const double c = baseline.BinomialOffset() + sign * theta * distance;
  return LinearModel::Binomial(w, c);
}

namespace {

double BinomialNuScore(const LinearModel& model, const Dataset& data, double g_floor) {
  std::vector<double> radii(data.size());
  std::vector<double> losses(data.size());
  std::vector<bool> correct(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Sample& s = data[i];
    radii[i] = ExactLinearRadius(model, s.features, s.label).radius;
    losses[i] = model.Loss(s.features, s.label);
    correct[i] = model.Predict(s.features) == s.label;
  }
  return NuScore(radii, losses, correct, g_floor).value;
}

}  // namespace

SweepResult DistanceSweep(const GaussianSpec& spec, std::span<const double> distances,
                          int classifiers_per_distance, uint64_t seed, int workers,
                          double g_floor) {
  if (distances.empty() || distances.front() != 0.0) {
    throw ArgumentError("sweep distances must start at 0");
  }
  if (!std::is_sorted(distances.begin(), distances.end())) {
    throw ArgumentError("sweep distances must be sorted ascending");
  }
  if (classifiers_per_distance < 1) {
    throw ArgumentError("need at least one classifier per distance");
  }
  const Dataset data = GenerateTwoGaussians(spec);
  const LinearModel baseline = BaselineClassifier(spec);
  const std::size_t per = static_cast<std::size_t>(classifiers_per_distance);
  const std::size_t total = distances.size() * per;

  std::vector<double> scores(total);
  std::vector<double> distance_errors(total);
  ParallelFor(total, workers, [&](std::size_t item) {
    const double d = distances[item / per];
    RandomStream rng(seed, "sweep", item);
    const LinearModel model = SampleClassifierAtDistance(baseline, d, rng);
    distance_errors[item] = std::abs(ClassifierDistance(baseline, model) - d);
    scores[item] = BinomialNuScore(model, data, g_floor);
  });

  SweepResult result;
  result.distances.assign(distances.begin(), distances.end());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const auto first = scores.begin() + static_cast<std::ptrdiff_t>(i * per);
    result.raw_scores.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(per), 0.0) /
                                static_cast<double>(per));
  }
  result.max_distance_error =
      *std::max_element(distance_errors.begin(), distance_errors.end());
  const double reference = result.raw_scores.front();
  if (!(reference > 0.0)) {
    throw ExperimentError("sweep reference score at distance 0 is zero");
  }
  for (double s : result.raw_scores) result.normalized_scores.push_back(s / reference);
  return result;
}

RegressionResult OrdinaryLeastSquares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("regression inputs differ in length");
  if (x.size() < 2) throw ExperimentError("regression needs at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ExperimentError("regression predictor is constant");
  RegressionResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = x.size();
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double SpearmanCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ArgumentError("rank correlation needs two equal-length series of >= 2 values");
  }
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

LossRadiusRegression RegressRadiusOnLoss(const AnyModel& model, const Dataset& data,
                                         const SearchConfig& cfg, int workers,
                                         double g_floor) {
  const Classifier& clf = AsClassifier(model);
  const auto radii = ModelRadii(model, data, cfg, workers);
  LossRadiusRegression out;
  std::vector<double> gs;
  std::vector<double> rs;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Sample& s = data[i];
    if (clf.Predict(s.features) != s.label) continue;
    const double loss = clf.Loss(s.features, s.label);
    if (!(loss > 0.0)) continue;
    const double g = GTransform(loss);
    if (g <= g_floor || !std::isfinite(radii[i].value)) continue;
    out.points.push_back({i, g, radii[i].value});
    gs.push_back(g);
    rs.push_back(radii[i].value);
  }
  if (out.points.size() < 10) {
    throw ExperimentError("loss/radius regression needs at least 10 usable samples, found " +
                          std::to_string(out.points.size()));
  }
  out.fit = OrdinaryLeastSquares(gs, rs);
  return out;
}

SubsetReport SubsetIndependenceReport(const AnyModel& model, const Dataset& data,
                                      const SearchConfig& cfg, int workers,
                                      double g_floor) {
  if (data.size() < 20) throw ArgumentError("subset report needs at least 20 samples");
  const Classifier& clf = AsClassifier(model);
  const auto estimates = ModelRadii(model, data, cfg, workers);
  const auto losses = Losses(clf, data);
  const auto predicted = Predictions(clf, data);
  const LossSplit split = SplitIndicesByLoss(losses);

  auto scores = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> r;
    std::vector<double> l;
    std::vector<bool> ok;
    for (std::size_t i : idx) {
      r.push_back(estimates[i].value);
      l.push_back(losses[i]);
      ok.push_back(predicted[i] == data[i].label);
    }
    return std::pair{MeanScore(r), NuScore(r, l, ok, g_floor).value};
  };
  const auto [rm_easy, rnu_easy] = scores(split.easy);
  const auto [rm_hard, rnu_hard] = scores(split.hard);

  SubsetReport report;
  report.r_mean_easy = rm_easy;
  report.r_mean_hard = rm_hard;
  report.r_nu_easy = rnu_easy;
  report.r_nu_hard = rnu_hard;
  report.n_easy = split.easy.size();
  report.n_hard = split.hard.size();
  if (rm_easy + rm_hard > 0.0) report.rel_var_mean = RelativeVariation(rm_easy, rm_hard);
  if (rnu_easy + rnu_hard > 0.0) report.rel_var_nu = RelativeVariation(rnu_easy, rnu_hard);
  return report;
}

}  // namespace robscore
