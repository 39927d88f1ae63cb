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

#include "robscore/scores.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "robscore/errors.h"
#include "robscore/io.h"

namespace robscore {

double GTransform(double loss) {
  if (!(loss > 0.0)) {
    throw DomainError("g(loss) is undefined for loss <= 0 (got " + FormatDouble(loss) + ")");
  }
  return -std::log(std::expm1(loss));
}

double MeanScore(std::span<const double> radii) {
  if (radii.empty()) throw ArgumentError("mean score of no radii");
  return std::accumulate(radii.begin(), radii.end(), 0.0) /
         static_cast<double>(radii.size());
}

double WorstScore(std::span<const double> radii) {
  if (radii.empty()) throw ArgumentError("worst score of no radii");
  return *std::min_element(radii.begin(), radii.end());
}

NuScoreResult NuScore(std::span<const double> radii, std::span<const double> losses,
                      const std::vector<bool>& correct, double g_floor,
                      NuWeighting weighting) {
  if (radii.size() != losses.size() || radii.size() != correct.size()) {
    throw ArgumentError("radii, losses and correctness flags differ in length");
  }
  if (radii.empty()) throw ArgumentError("nu score of no samples");
  if (!(g_floor > 0.0)) throw ArgumentError("g_floor must be > 0");

  NuScoreResult out;
  double sum = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!correct[i]) continue;
    if (!(losses[i] > 0.0)) {
      ++out.n_excluded;
      continue;
    }
    const double g = GTransform(losses[i]);
    if (g <= g_floor) {
      ++out.n_excluded;
      continue;
    }
    sum += radii[i] / g;
    weight += 1.0 / g;
  }
  if (weighting == NuWeighting::kPrintedMean) {
    out.value = sum / static_cast<double>(radii.size());
  } else {
    out.value = weight > 0.0 ? sum / weight : 0.0;
  }
  return out;
}

ScoreReport MakeScoreReport(std::span<const double> radii, std::span<const double> losses,
                            const std::vector<bool>& correct, double g_floor,
                            NuWeighting weighting) {
  const NuScoreResult nu = NuScore(radii, losses, correct, g_floor, weighting);
  ScoreReport report;
  report.r_mean = MeanScore(radii);
  report.r_worst = WorstScore(radii);
  report.r_nu = nu.value;
  report.n_samples = radii.size();
  report.accuracy = static_cast<double>(std::count(correct.begin(), correct.end(), true)) /
                    static_cast<double>(radii.size());
  report.n_excluded_nu = nu.n_excluded;
  report.g_floor = g_floor;
  return report;
}

std::string ScoreReportCsv(const ScoreReport& r) {
  return "r_mean,r_worst,r_nu,accuracy,n_samples,n_excluded_nu,g_floor\n" +
         FormatDouble(r.r_mean) + "," + FormatDouble(r.r_worst) + "," +
         FormatDouble(r.r_nu) + "," + FormatDouble(r.accuracy) + "," +
         std::to_string(r.n_samples) + "," + std::to_string(r.n_excluded_nu) + "," +
         FormatDouble(r.g_floor) + "\n";
}

std::string ScoreReportJson(const ScoreReport& r) {
  nlohmann::ordered_json doc;
  doc["r_mean"] = r.r_mean;
  doc["r_worst"] = r.r_worst;
  doc["r_nu"] = r.r_nu;
  doc["accuracy"] = r.accuracy;
  doc["n_samples"] = r.n_samples;
  doc["n_excluded_nu"] = r.n_excluded_nu;
  doc["g_floor"] = r.g_floor;
  return doc.dump(2) + "\n";
}

double BinomialRadiusFromLoss(double loss, double beta_norm) {
  if (!(beta_norm > 0.0)) throw DomainError("beta norm must be > 0");
  if (!(loss > 0.0 && loss < std::log(2.0))) {
    throw DomainError("binomial radius needs 0 < loss < log 2 (got " +
                      FormatDouble(loss) + ")");
  }
  return GTransform(loss) / beta_norm;
}

BoundInterval LossRadiusBounds(double loss, int num_classes, double beta_gap_norm,
                               int m_class) {
  if (num_classes < 2) throw ArgumentError("bounds need K >= 2");
  if (!(beta_gap_norm > 0.0)) throw DomainError("beta gap norm must be > 0");
  if (!(loss > 0.0 && loss < std::log(static_cast<double>(num_classes)))) {
    throw DomainError("bounds need 0 < loss < log K (got " + FormatDouble(loss) + ")");
  }
  const double g = GTransform(loss);
  BoundInterval out;
  out.lower = std::max(0.0, g) / beta_gap_norm;
  out.upper = (g + std::log(static_cast<double>(num_classes - 1))) / beta_gap_norm;
  out.m_class = m_class;
  out.beta_gap_norm = beta_gap_norm;
  return out;
}

double RelativeVariation(double score_easy, double score_hard) {
  const double total = score_easy + score_hard;
  if (!(total > 0.0)) throw DomainError("relative variation needs e + h > 0");
  return std::abs(score_easy - score_hard) / total;
}

double HoeffdingEpsilon(double radius, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(radius >= 0.0)) throw DomainError("radius must be >= 0");
  return radius / std::sqrt(-2.0 * std::log(alpha));
}

}  // namespace robscore
