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
#include <memory>
#include <numeric>

#include "robscore/errors.h"
#include "robscore/experiments.h"
#include "robscore/io.h"
#include "robscore/parallel.h"
#include "robscore/training.h"

namespace robscore {

HeatmapGrid NoiseAccuracyHeatmap(const Classifier& model, const Dataset& data,
                                 std::span<const double> noise_levels,
                                 std::span<const std::size_t> subset_sizes,
                                 int repetitions, uint64_t seed, int workers) {
  if (repetitions < 1) throw ArgumentError("repetitions must be >= 1");
  if (noise_levels.empty() || subset_sizes.empty()) {
    throw ArgumentError("heat map needs noise levels and subset sizes");
  }
  for (double s : noise_levels) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("noise levels must be >= 0");
  }
  for (std::size_t n : subset_sizes) {
    if (n < 1 || n > data.size()) {
      throw ArgumentError("subset size " + std::to_string(n) + " outside 1.." +
                          std::to_string(data.size()));
    }
  }
  const auto losses = Losses(model, data);
  const std::size_t rows = subset_sizes.size();
  const std::size_t cols = noise_levels.size();
  std::vector<std::vector<std::size_t>> kept(rows);
  for (std::size_t i = 0; i < rows; ++i) kept[i] = LowestLossIndices(losses, subset_sizes[i]);

  HeatmapGrid grid;
  grid.noise_levels.assign(noise_levels.begin(), noise_levels.end());
  grid.subset_sizes.assign(subset_sizes.begin(), subset_sizes.end());
  grid.repetitions = repetitions;
  grid.error = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(cols));
  grid.standard_error = grid.error;

  const int d = model.input_dim();
  ParallelFor(rows * cols, workers, [&](std::size_t cell) {
    const std::size_t i = cell / cols;
    const std::size_t j = cell % cols;
    const double s = noise_levels[j];
    RandomStream rng(seed, "heatmap", cell);
    // Integer counts keep the noiseless column exactly equal to the clean error.
    std::vector<double> counts(static_cast<std::size_t>(repetitions));
    Vector point(d);
    for (int rep = 0; rep < repetitions; ++rep) {
      std::size_t wrong = 0;
      for (std::size_t idx : kept[i]) {
        const Sample& smp = data[idx];
        point = smp.features + s * SphereDirection(d, rng);
        wrong += model.Predict(point) != smp.label;
      }
      counts[static_cast<std::size_t>(rep)] = static_cast<double>(wrong);
    }
    const double n_kept = static_cast<double>(kept[i].size());
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double mean = total / (n_kept * repetitions);
    const double mean_count = total / repetitions;
    double var = 0.0;
    for (double c : counts) var += (c - mean_count) * (c - mean_count);
    const double se =
        repetitions > 1 ? std::sqrt(var / (repetitions - 1) / repetitions) / n_kept : 0.0;
    grid.error(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mean;
    grid.standard_error(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = se;
  });
  return grid;
}

Corruption IdentityCorruption() {
  return {"identity",
          [](const VectorRef& x, std::size_t, RandomStream&) -> Vector { return x; }};
}

Corruption GaussianNormCorruption(double norm) {
  if (!(norm >= 0.0)) throw ArgumentError("corruption norm must be >= 0");
  return {"gaussian_norm_" + FormatDouble(norm),
          [norm](const VectorRef& x, std::size_t, RandomStream& rng) -> Vector {
            return x + norm * SphereDirection(static_cast<int>(x.size()), rng);
          }};
}

Corruption UniformNoiseCorruption(double amplitude) {
  if (!(amplitude >= 0.0)) throw ArgumentError("corruption amplitude must be >= 0");
  return {"uniform_" + FormatDouble(amplitude),
          [amplitude](const VectorRef& x, std::size_t, RandomStream& rng) -> Vector {
            return x + amplitude * BallPointLinf(static_cast<int>(x.size()), rng);
          }};
}

Corruption ZeroingCorruption(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ArgumentError("zeroing fraction must lie in [0, 1]");
  }
  return {"zeroing_" + FormatDouble(fraction),
          [fraction](const VectorRef& x, std::size_t, RandomStream& rng) -> Vector {
            Vector out = x;
            for (Eigen::Index j = 0; j < out.size(); ++j) {
              if (rng.Uniform() < fraction) out[j] = 0.0;
            }
            return out;
          }};
}

Corruption DatasetCorruption(std::string name, Dataset corrupted) {
  auto shared = std::make_shared<const Dataset>(std::move(corrupted));
  return {std::move(name),
          [shared](const VectorRef& x, std::size_t index, RandomStream&) -> Vector {
            if (index >= shared->size()) {
              throw ArgumentError("corrupted dataset has no sample " + std::to_string(index));
            }
            const Vector& out = (*shared)[index].features;
            if (out.size() != x.size()) {
              throw ArgumentError("corrupted dataset dimension differs from clean data");
            }
            return out;
          }};
}

CorruptionSuite BuiltinCorruptionSuite(double scale) {
  if (!(scale > 0.0)) throw ArgumentError("corruption scale must be > 0");
  CorruptionSuite suite;
  for (int level = 1; level <= 5; ++level) {
    suite.push_back(GaussianNormCorruption(0.5 * level * scale));
  }
  for (int level = 1; level <= 5; ++level) {
    suite.push_back(UniformNoiseCorruption(0.25 * level * scale));
  }
  for (int level = 1; level <= 5; ++level) suite.push_back(ZeroingCorruption(0.1 * level));
  return suite;
}

std::vector<CurvePoint> CorruptionErrorCurve(const Classifier& model, const Dataset& data,
                                             const CorruptionSuite& suite,
                                             std::span<const std::size_t> kept_counts,
                                             std::size_t working_size, int subset_draws,
                                             uint64_t seed, int workers) {
  if (suite.empty()) throw ArgumentError("corruption suite is empty");
  if (subset_draws < 1) throw ArgumentError("subset draws must be >= 1");
  if (working_size < 1 || working_size > data.size()) {
    throw ArgumentError("working size " + std::to_string(working_size) + " outside 1.." +
                        std::to_string(data.size()));
  }
  for (std::size_t k : kept_counts) {
    if (k < 1 || k > working_size) {
      throw ArgumentError("kept count " + std::to_string(k) + " outside 1.." +
                          std::to_string(working_size));
    }
  }
  const auto all_losses = Losses(model, data);
  const std::size_t n_draws = static_cast<std::size_t>(subset_draws);
  // per_draw[draw][kept index]
  std::vector<std::vector<double>> per_draw(n_draws);

  ParallelFor(n_draws, workers, [&](std::size_t draw) {
    const auto subset =
        RandomSubsetIndices(data.size(), working_size, DeriveSeed(seed, "mce-subset", draw));
    std::vector<double> losses(subset.size());
    for (std::size_t t = 0; t < subset.size(); ++t) losses[t] = all_losses[subset[t]];

    // wrong[c][t]: corruption c misclassifies subset sample t.
    std::vector<std::vector<char>> wrong(suite.size(), std::vector<char>(subset.size()));
    for (std::size_t c = 0; c < suite.size(); ++c) {
      const uint64_t corruption_seed = DeriveSeed(seed, "mce-corruption", c);
      for (std::size_t t = 0; t < subset.size(); ++t) {
        const std::size_t idx = subset[t];
        RandomStream rng(corruption_seed, "sample", idx);
        const Vector corrupted = suite[c].apply(data[idx].features, idx, rng);
        CheckInput(model, corrupted);
        wrong[c][t] = model.Predict(corrupted) != data[idx].label;
      }
    }
    for (std::size_t k : kept_counts) {
      const auto keep = LowestLossIndices(losses, k);
      double mce = 0.0;
      for (std::size_t c = 0; c < suite.size(); ++c) {
        std::size_t errors = 0;
        for (std::size_t t : keep) errors += wrong[c][t] != 0;
        mce += static_cast<double>(errors) / static_cast<double>(k);
      }
      per_draw[draw].push_back(mce / static_cast<double>(suite.size()));
    }
  });

  std::vector<CurvePoint> curve;
  for (std::size_t q = 0; q < kept_counts.size(); ++q) {
    double mean = 0.0;
    for (const auto& row : per_draw) mean += row[q];
    mean /= static_cast<double>(n_draws);
    double var = 0.0;
    for (const auto& row : per_draw) var += (row[q] - mean) * (row[q] - mean);
    const double se =
        n_draws > 1 ? std::sqrt(var / static_cast<double>(n_draws - 1) / n_draws) : 0.0;
    curve.push_back({kept_counts[q], mean, se});
  }
  return curve;
}

namespace {

std::string SeedLine(uint64_t seed) { return "# seed=" + std::to_string(seed) + "\n"; }

}  // namespace

std::string SweepCsv(const SweepResult& result, uint64_t seed) {
  std::string out = SeedLine(seed) + "distance,score\n";
  for (std::size_t i = 0; i < result.distances.size(); ++i) {
    out += FormatDouble(result.distances[i]) + "," +
           FormatDouble(result.normalized_scores[i]) + "\n";
  }
  return out;
}

std::string HeatmapCsv(const HeatmapGrid& grid, uint64_t seed) {
  std::string out = SeedLine(seed) + "noise,size,error\n";
  for (std::size_t i = 0; i < grid.subset_sizes.size(); ++i) {
    for (std::size_t j = 0; j < grid.noise_levels.size(); ++j) {
      out += FormatDouble(grid.noise_levels[j]) + "," + std::to_string(grid.subset_sizes[i]) +
             "," +
             FormatDouble(grid.error(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) +
             "\n";
    }
  }
  return out;
}

std::string RegressionPointsCsv(const LossRadiusRegression& reg, uint64_t seed) {
  std::string out = SeedLine(seed) + "g_loss,radius\n";
  for (const auto& p : reg.points) {
    out += FormatDouble(p.g_loss) + "," + FormatDouble(p.radius) + "\n";
  }
  return out;
}

std::string RegressionSummaryCsv(const RegressionResult& fit, uint64_t seed) {
  return SeedLine(seed) + "slope,intercept,r_squared,n_points\n" + FormatDouble(fit.slope) +
         "," + FormatDouble(fit.intercept) + "," + FormatDouble(fit.r_squared) + "," +
         std::to_string(fit.n_points) + "\n";
}

std::string SubsetReportCsv(const SubsetReport& report, uint64_t seed) {
  auto rel = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string("undefined");
  };
  return SeedLine(seed) + "score,easy,hard,rel_var\n" + "R_m," +
         FormatDouble(report.r_mean_easy) + "," + FormatDouble(report.r_mean_hard) + "," +
         rel(report.rel_var_mean) + "\n" + "R_nu," + FormatDouble(report.r_nu_easy) + "," +
         FormatDouble(report.r_nu_hard) + "," + rel(report.rel_var_nu) + "\n";
}

std::string CurveCsv(std::span<const CurvePoint> curve, uint64_t seed) {
  std::string out = SeedLine(seed) + "kept,mce\n";
  for (const auto& p : curve) {
    out += std::to_string(p.kept) + "," + FormatDouble(p.mce) + "\n";
  }
  return out;
}

}  // namespace robscore
