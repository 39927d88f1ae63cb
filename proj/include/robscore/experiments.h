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

#ifndef ROBSCORE_EXPERIMENTS_H_
#define ROBSCORE_EXPERIMENTS_H_

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robscore/classifier.h"
#include "robscore/dataset.h"
#include "robscore/linear_model.h"
#include "robscore/model_io.h"
#include "robscore/radius.h"
#include "robscore/rng.h"
#include "robscore/scores.h"

namespace robscore {

// ---------------------------------------------------------------------------
// Synthetic two-Gaussian study.

// Binomial classifier whose boundary is the perpendicular bisector of
// [mean_a, mean_b], written with a unit-norm weight gap: w = (b - a) / |b - a|,
// offset = -(|b|^2 - |a|^2) / (2 |b - a|).
LinearModel BaselineClassifier(const GaussianSpec& spec);

// |w_b - w_a|_2 + |c_b - c_a| over the reduced binomial forms (w, c) of a and b.
double ClassifierDistance(const LinearModel& a, const LinearModel& b);

// Binomial classifier at exactly `distance` from `baseline`: a split theta ~
// U[0, 1] puts (1 - theta) * distance on the weights along a uniform random
// direction and theta * distance on the offset with a random sign.
LinearModel SampleClassifierAtDistance(const LinearModel& baseline, double distance,
                                       RandomStream& rng);

struct SweepResult {
  std::vector<double> distances;
  // Mean R_nu per distance divided by the distance-0 entry.
  std::vector<double> normalized_scores;
  std::vector<double> raw_scores;
  // Largest |ClassifierDistance(baseline, sampled) - d| seen.
  double max_distance_error = 0.0;
};

SweepResult DistanceSweep(const GaussianSpec& spec, std::span<const double> distances,
                          int classifiers_per_distance, uint64_t seed, int workers,
                          double g_floor = kDefaultGFloor);

// ---------------------------------------------------------------------------
// Loss / radius relationship.

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

RegressionResult OrdinaryLeastSquares(std::span<const double> x, std::span<const double> y);

// Pearson correlation of average ranks.
double SpearmanCorrelation(std::span<const double> x, std::span<const double> y);

struct LossRadiusPoint {
  std::size_t sample_index = 0;
  double g_loss = 0.0;
  double radius = 0.0;
};

struct LossRadiusRegression {
  RegressionResult fit;
  std::vector<LossRadiusPoint> points;
};

// Least squares of radius on g(loss) over well-classified samples with
// g(loss) > g_floor and a finite radius. Needs at least 10 such samples.
LossRadiusRegression RegressRadiusOnLoss(const AnyModel& model, const Dataset& data,
                                         const SearchConfig& cfg, int workers,
                                         double g_floor = kDefaultGFloor);

struct SubsetReport {
  double r_mean_easy = 0.0;
  double r_mean_hard = 0.0;
  double r_nu_easy = 0.0;
  double r_nu_hard = 0.0;
  // Empty when both subset scores are zero.
  std::optional<double> rel_var_mean;
  std::optional<double> rel_var_nu;
  std::size_t n_easy = 0;
  std::size_t n_hard = 0;
};

// Scores on the easy (low-loss) and hard halves of `data`.
SubsetReport SubsetIndependenceReport(const AnyModel& model, const Dataset& data,
                                      const SearchConfig& cfg, int workers,
                                      double g_floor = kDefaultGFloor);

// ---------------------------------------------------------------------------
// Noise and corruption studies.

struct HeatmapGrid {
  std::vector<double> noise_levels;
  std::vector<std::size_t> subset_sizes;
  // error(i, j): subset_sizes[i] x noise_levels[j], averaged over repetitions.
  Eigen::MatrixXd error;
  Eigen::MatrixXd standard_error;
  int repetitions = 0;
};

// For each kept size n the n lowest-loss samples are perturbed by noise of
// exact L2 norm s along a uniform direction; cells hold the mean error rate.
HeatmapGrid NoiseAccuracyHeatmap(const Classifier& model, const Dataset& data,
                                 std::span<const double> noise_levels,
                                 std::span<const std::size_t> subset_sizes,
                                 int repetitions, uint64_t seed, int workers);

struct Corruption {
  std::string name;
  // Maps the clean features of sample `index` (position in the full dataset).
  std::function<Vector(const VectorRef& x, std::size_t index, RandomStream& rng)> apply;
};

using CorruptionSuite = std::vector<Corruption>;

Corruption IdentityCorruption();
Corruption GaussianNormCorruption(double norm);
Corruption UniformNoiseCorruption(double amplitude);
Corruption ZeroingCorruption(double fraction);
// Index-paired replacement by a pre-corrupted copy of the dataset.
Corruption DatasetCorruption(std::string name, Dataset corrupted);

// Additive fixed-norm Gaussian, uniform noise and coordinate zeroing, five
// severities each; `scale` multiplies the noise magnitudes.
CorruptionSuite BuiltinCorruptionSuite(double scale = 1.0);

struct CurvePoint {
  std::size_t kept = 0;
  double mce = 0.0;
  double standard_error = 0.0;
};

// Mean corruption error on the `kept` lowest-loss samples of random working
// subsets, averaged over draws.
std::vector<CurvePoint> CorruptionErrorCurve(const Classifier& model, const Dataset& data,
                                             const CorruptionSuite& suite,
                                             std::span<const std::size_t> kept_counts,
                                             std::size_t working_size, int subset_draws,
                                             uint64_t seed, int workers);

// ---------------------------------------------------------------------------
// CSV output. Every file starts with a "# seed=<n>" line and a header row.

std::string SweepCsv(const SweepResult& result, uint64_t seed);
std::string HeatmapCsv(const HeatmapGrid& grid, uint64_t seed);
std::string RegressionPointsCsv(const LossRadiusRegression& reg, uint64_t seed);
std::string RegressionSummaryCsv(const RegressionResult& fit, uint64_t seed);
std::string SubsetReportCsv(const SubsetReport& report, uint64_t seed);
std::string CurveCsv(std::span<const CurvePoint> curve, uint64_t seed);

}  // namespace robscore

#endif  // ROBSCORE_EXPERIMENTS_H_
