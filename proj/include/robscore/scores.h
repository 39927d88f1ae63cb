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

#ifndef ROBSCORE_SCORES_H_
#define ROBSCORE_SCORES_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace robscore {

inline constexpr double kDefaultGFloor = 1e-9;

// g(t) = -log(exp(t) - 1), evaluated through expm1. Positive iff t < log 2.
double GTransform(double loss);

// R_m: mean radius.
double MeanScore(std::span<const double> radii);
// R_w: minimum radius.
double WorstScore(std::span<const double> radii);

enum class NuWeighting {
  // (1/|D|) * sum of r / g(loss); misclassified and excluded samples add 0.
  kPrintedMean,
  // sum of r / g(loss) divided by sum of 1 / g(loss) over included samples.
  kNormalized,
};

struct NuScoreResult {
  double value = 0.0;
  std::size_t n_excluded = 0;
};

// Difficulty-aware score R_nu. A well-classified sample whose g(loss) is
// <= g_floor (or whose loss underflowed to 0) contributes 0 and is counted
// in n_excluded.
NuScoreResult NuScore(std::span<const double> radii, std::span<const double> losses,
                      const std::vector<bool>& correct, double g_floor = kDefaultGFloor,
                      NuWeighting weighting = NuWeighting::kPrintedMean);

struct ScoreReport {
  double r_mean = 0.0;
  double r_worst = 0.0;
  double r_nu = 0.0;
  double accuracy = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_excluded_nu = 0;
  double g_floor = kDefaultGFloor;
};

ScoreReport MakeScoreReport(std::span<const double> radii, std::span<const double> losses,
                            const std::vector<bool>& correct,
                            double g_floor = kDefaultGFloor,
                            NuWeighting weighting = NuWeighting::kPrintedMean);

std::string ScoreReportCsv(const ScoreReport& report);
std::string ScoreReportJson(const ScoreReport& report);

// Binomial logistic regression: r = g(loss) / |beta|, valid for 0 < loss < log 2.
double BinomialRadiusFromLoss(double loss, double beta_norm);

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  int m_class = 0;
  double beta_gap_norm = 0.0;
};

// Multinomial logistic regression bracket on the radius from the loss:
//   max(0, g(loss)) / |beta_m - beta_k|  <=  r  <=  (g(loss) + log(K - 1)) / |beta_m - beta_k|.
// The lower end holds with m the nearest-hyperplane class; the upper end
// holds with m the runner-up logit class. Requires 0 < loss < log K.
BoundInterval LossRadiusBounds(double loss, int num_classes, double beta_gap_norm,
                               int m_class = 0);

// |e - h| / (e + h).
double RelativeVariation(double score_easy, double score_hard);

// Noise scale at which Hoeffding's inequality caps the misclassification
// probability of a binomial linear model under L-infinity ball noise at alpha:
// r / sqrt(-2 log alpha).
double HoeffdingEpsilon(double radius, double alpha);

}  // namespace robscore

#endif  // ROBSCORE_SCORES_H_
