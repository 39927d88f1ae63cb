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

#include "robscore/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "robscore/dataset.h"
#include "robscore/errors.h"
#include "robscore/experiments.h"
#include "robscore/io.h"
#include "robscore/model_io.h"
#include "robscore/parallel.h"
#include "robscore/radius.h"
#include "robscore/scores.h"
#include "robscore/training.h"

namespace robscore::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

// Turns argument-validation failures of module configs into usage errors.
template <typename Fn>
void CheckUsage(Fn&& fn) {
  try {
    fn();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

void RequireFile(const std::string& path) {
  if (path.empty()) throw UsageError("missing required input path");
  if (!std::filesystem::is_regular_file(path)) {
    throw FormatError("input file not found: " + path);
  }
}

std::vector<double> ParseDoubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(ParseDouble(field));
    } catch (const FormatError&) {
      throw UsageError(std::string(flag) + ": not a number list: " + text);
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<std::size_t> ParseCounts(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  for (double v : ParseDoubles(text, flag)) {
    if (v < 1 || v != std::floor(v)) {
      throw UsageError(std::string(flag) + ": counts must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// "0,0:4,0" -> {(0,0), (4,0)}
std::vector<Eigen::VectorXd> ParseMeans(const std::string& text) {
  std::vector<Eigen::VectorXd> means;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ':')) {
    const auto values = ParseDoubles(group, "--means");
    means.push_back(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                      static_cast<Eigen::Index>(values.size())));
  }
  if (means.size() < 2) throw UsageError("--means: need at least two class means");
  return means;
}

std::string Num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

struct Common {
  uint64_t seed = 0;
  int workers = DefaultWorkerCount();
};

// Expands "--config <file>" into flags. Keys already given on the command
// line are skipped so that explicit flags win.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;
  RequireFile(config_path);
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : out) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::istringstream in(ReadFile(config_path));
  std::string line;
  int line_no = 0;
  std::vector<std::pair<std::string, std::string>> entries;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(config_path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r\"");
      const auto e = v.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const auto& [key, value] : entries) {
    if (given(key)) continue;
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

void AddCommon(CLI::App* sub, Common& common) {
  sub->add_option("--seed", common.seed, "Master random seed");
  sub->add_option("--workers", common.workers,
                  "Worker threads; outputs do not depend on it")
      ->check(CLI::PositiveNumber);
  sub->add_option("--config", "Flat key=value file with the same keys; flags win");
}

void AddSearch(CLI::App* sub, SearchConfig& cfg) {
  sub->add_option("--directions", cfg.directions_per_level,
                  "Random directions tried per probed radius");
  sub->add_option("--precision", cfg.precision, "Absolute radius precision");
  sub->add_option("--initial-radius", cfg.initial_radius, "First bracketing radius");
  sub->add_option("--max-doublings", cfg.max_doublings, "Bracketing doublings cap");
}

struct ModelData {
  std::string model;
  std::string data;
  bool header = false;
};

void AddModelData(CLI::App* sub, ModelData& md) {
  sub->add_option("--model", md.model, "Model JSON file")->required();
  sub->add_option("--data", md.data, "Dataset CSV file")->required();
  sub->add_flag("--header", md.header, "Dataset CSV has a header row");
}

std::vector<bool> CorrectFlags(const Classifier& model, const Dataset& data) {
  const auto pred = Predictions(model, data);
  std::vector<bool> ok(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) ok[i] = pred[i] == data[i].label;
  return ok;
}

void CheckCompatible(const Classifier& model, const Dataset& data) {
  if (model.input_dim() != data.dim()) {
    throw FormatError("model expects dimension " + std::to_string(model.input_dim()) +
                      " but data has " + std::to_string(data.dim()));
  }
  if (data.num_classes() > model.num_classes()) {
    throw FormatError("data has labels beyond the model's " +
                      std::to_string(model.num_classes()) + " classes");
  }
}

// Reads the dataset with the model's class count, so subsets missing the top
// label still line up with the model.
Dataset LoadForModel(const std::string& path, bool header, const Classifier& model) {
  const Dataset raw = LoadCsv(path, header);
  CheckCompatible(model, raw);
  return Dataset(raw.samples(), raw.dim(), model.num_classes());
}

std::string DefaultPath(const std::string& given, const std::string& fallback) {
  return given.empty() ? fallback : given;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-boundary radii and difficulty-aware robustness scores", "robscore"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string("robscore ") + kVersion);
  app.require_subcommand(1);

  std::function<void()> action;

  // gen ---------------------------------------------------------------------
  struct {
    Common common;
    std::string means;
    double std = 1.0;
    int n = 100;
    std::string out;
    bool header = false;
  } gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample isotropic Gaussian classes to CSV");
  AddCommon(gen_cmd, gen.common);
  gen_cmd->add_option("--means", gen.means, "Class means, e.g. 0,0:4,0")->required();
  gen_cmd->add_option("--std", gen.std, "Shared isotropic standard deviation");
  gen_cmd->add_option("--n", gen.n, "Samples per class");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();
  gen_cmd->add_flag("--header", gen.header, "Write a header row");
  gen_cmd->callback([&] {
    action = [&] {
      GaussianMixtureSpec spec;
      spec.std = gen.std;
      spec.n_per_class = gen.n;
      spec.seed = gen.common.seed;
      CheckUsage([&] {
        spec.means = ParseMeans(gen.means);
        spec.Validate();
      });
      const Dataset data = GenerateGaussianMixture(spec);
      SaveCsv(data, gen.out, gen.header);
      out << "gen seed=" << gen.common.seed << " samples=" << data.size()
          << " classes=" << data.num_classes() << "\n";
    };
  });

  // train -------------------------------------------------------------------
  struct {
    Common common;
    std::string data;
    bool header = false;
    std::string kind = "linear";
    int hidden = 16;
    TrainConfig cfg;
    std::string out;
  } train;
  auto* train_cmd = app.add_subcommand("train", "Train a logistic or MLP classifier");
  AddCommon(train_cmd, train.common);
  train_cmd->add_option("--data", train.data, "Training CSV")->required();
  train_cmd->add_flag("--header", train.header, "Dataset CSV has a header row");
  train_cmd->add_option("--kind", train.kind, "Model kind")
      ->check(CLI::IsMember({"linear", "mlp"}));
  train_cmd->add_option("--hidden", train.hidden, "MLP hidden width");
  train_cmd->add_option("--lr", train.cfg.learning_rate, "Learning rate");
  train_cmd->add_option("--epochs", train.cfg.epochs, "Training epochs");
  train_cmd->add_option("--batch-size", train.cfg.batch_size, "Mini-batch size");
  train_cmd->add_option("--l2", train.cfg.l2_penalty, "L2 penalty on weights");
  train_cmd->add_option("--out", train.out, "Output model JSON")->required();
  train_cmd->callback([&] {
    action = [&] {
      train.cfg.seed = train.common.seed;
      CheckUsage([&] {
        train.cfg.Validate();
        if (train.hidden < 1) throw ArgumentError("--hidden must be >= 1");
      });
      RequireFile(train.data);
      const Dataset data = LoadCsv(train.data, train.header);
      AnyModel model = train.kind == "mlp"
                           ? AnyModel(TrainMlp(data, train.hidden, train.cfg))
                           : AnyModel(TrainLogistic(data, train.cfg));
      SaveModel(model, train.out);
      out << "train seed=" << train.common.seed << " kind=" << train.kind
          << " accuracy=" << Num(Accuracy(AsClassifier(model), data))
          << " mean_loss=" << Num(MeanLoss(AsClassifier(model), data)) << "\n";
    };
  });

  // score -------------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    SearchConfig search;
    double g_floor = kDefaultGFloor;
    std::string weighting = "printed";
    std::string out;
    std::string json;
  } score;
  auto* score_cmd = app.add_subcommand("score", "Compute R_m, R_w and R_nu of a model");
  AddCommon(score_cmd, score.common);
  AddModelData(score_cmd, score.md);
  AddSearch(score_cmd, score.search);
  score_cmd->add_option("--g-floor", score.g_floor, "Exclude samples with g(loss) <= this");
  score_cmd->add_option("--nu-weighting", score.weighting, "R_nu averaging")
      ->check(CLI::IsMember({"printed", "normalized"}));
  score_cmd->add_option("--out", score.out, "Score report CSV (default score_report.csv)");
  score_cmd->add_option("--json", score.json, "Also write the report as JSON");
  score_cmd->callback([&] {
    action = [&] {
      score.search.seed = score.common.seed;
      CheckUsage([&] {
        score.search.Validate();
        if (!(score.g_floor > 0.0)) throw ArgumentError("--g-floor must be > 0");
      });
      RequireFile(score.md.model);
      RequireFile(score.md.data);
      const AnyModel model = LoadModel(score.md.model);
      const Classifier& clf = AsClassifier(model);
      const Dataset data = LoadForModel(score.md.data, score.md.header, clf);
      const auto estimates = ModelRadii(model, data, score.search, score.common.workers);
      std::vector<double> radii;
      for (const auto& e : estimates) radii.push_back(e.value);
      const auto report = MakeScoreReport(
          radii, Losses(clf, data), CorrectFlags(clf, data), score.g_floor,
          score.weighting == "normalized" ? NuWeighting::kNormalized
                                          : NuWeighting::kPrintedMean);
      WriteFileAtomic(DefaultPath(score.out, "score_report.csv"), ScoreReportCsv(report));
      if (!score.json.empty()) WriteFileAtomic(score.json, ScoreReportJson(report));
      out << "score seed=" << score.common.seed << " R_m=" << Num(report.r_mean)
          << " R_w=" << Num(report.r_worst) << " R_nu=" << Num(report.r_nu)
          << " accuracy=" << Num(report.accuracy)
          << " excluded=" << report.n_excluded_nu << "\n";
    };
  });

  // radius ------------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    SearchConfig search;
    std::string out;
  } radius;
  auto* radius_cmd = app.add_subcommand("radius", "Per-sample radii of robustness to CSV");
  AddCommon(radius_cmd, radius.common);
  AddModelData(radius_cmd, radius.md);
  AddSearch(radius_cmd, radius.search);
  radius_cmd->add_option("--out", radius.out, "Output CSV (default radii.csv)");
  radius_cmd->callback([&] {
    action = [&] {
      radius.search.seed = radius.common.seed;
      CheckUsage([&] { radius.search.Validate(); });
      RequireFile(radius.md.model);
      RequireFile(radius.md.data);
      const AnyModel model = LoadModel(radius.md.model);
      const Classifier& clf = AsClassifier(model);
      const Dataset data = LoadForModel(radius.md.data, radius.md.header, clf);
      const auto estimates = ModelRadii(model, data, radius.search, radius.common.workers);
      WriteFileAtomic(DefaultPath(radius.out, "radii.csv"), RadiiCsv(clf, data, estimates));
      std::vector<double> values;
      for (const auto& e : estimates) values.push_back(e.value);
      out << "radius seed=" << radius.common.seed << " samples=" << data.size()
          << " mean_radius=" << Num(values.empty() ? 0.0 : MeanScore(values)) << "\n";
    };
  });

  // regress -----------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    SearchConfig search;
    double g_floor = kDefaultGFloor;
    std::string out;
    std::string summary;
  } regress;
  auto* regress_cmd =
      app.add_subcommand("regress", "Least-squares fit of radius against g(loss)");
  AddCommon(regress_cmd, regress.common);
  AddModelData(regress_cmd, regress.md);
  AddSearch(regress_cmd, regress.search);
  regress_cmd->add_option("--g-floor", regress.g_floor, "Exclude samples with g(loss) <= this");
  regress_cmd->add_option("--out", regress.out, "Per-point CSV (default regression_points.csv)");
  regress_cmd->add_option("--summary", regress.summary,
                          "One-row summary CSV (default regression_summary.csv)");
  regress_cmd->callback([&] {
    action = [&] {
      regress.search.seed = regress.common.seed;
      CheckUsage([&] {
        regress.search.Validate();
        if (!(regress.g_floor > 0.0)) throw ArgumentError("--g-floor must be > 0");
      });
      RequireFile(regress.md.model);
      RequireFile(regress.md.data);
      const AnyModel model = LoadModel(regress.md.model);
      const Dataset data = LoadForModel(regress.md.data, regress.md.header, AsClassifier(model));
      const auto reg = RegressRadiusOnLoss(model, data, regress.search, regress.common.workers,
                                           regress.g_floor);
      WriteFileAtomic(DefaultPath(regress.out, "regression_points.csv"),
                      RegressionPointsCsv(reg, regress.common.seed));
      WriteFileAtomic(DefaultPath(regress.summary, "regression_summary.csv"),
                      RegressionSummaryCsv(reg.fit, regress.common.seed));
      out << "regress seed=" << regress.common.seed << " r_squared=" << Num(reg.fit.r_squared)
          << " slope=" << Num(reg.fit.slope) << " intercept=" << Num(reg.fit.intercept)
          << " points=" << reg.fit.n_points << "\n";
    };
  });

  // split-report ------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    SearchConfig search;
    double g_floor = kDefaultGFloor;
    std::string out;
  } split;
  auto* split_cmd =
      app.add_subcommand("split-report", "R_m and R_nu on the easy and hard halves");
  AddCommon(split_cmd, split.common);
  AddModelData(split_cmd, split.md);
  AddSearch(split_cmd, split.search);
  split_cmd->add_option("--g-floor", split.g_floor, "Exclude samples with g(loss) <= this");
  split_cmd->add_option("--out", split.out, "Output CSV (default split_report.csv)");
  split_cmd->callback([&] {
    action = [&] {
      split.search.seed = split.common.seed;
      CheckUsage([&] {
        split.search.Validate();
        if (!(split.g_floor > 0.0)) throw ArgumentError("--g-floor must be > 0");
      });
      RequireFile(split.md.model);
      RequireFile(split.md.data);
      const AnyModel model = LoadModel(split.md.model);
      const Dataset data = LoadForModel(split.md.data, split.md.header, AsClassifier(model));
      const auto report =
          SubsetIndependenceReport(model, data, split.search, split.common.workers, split.g_floor);
      WriteFileAtomic(DefaultPath(split.out, "split_report.csv"),
                      SubsetReportCsv(report, split.common.seed));
      auto rel = [](const std::optional<double>& v) {
        return v ? Num(*v) : std::string("undefined");
      };
      out << "split-report seed=" << split.common.seed
          << " rel_var_R_m=" << rel(report.rel_var_mean)
          << " rel_var_R_nu=" << rel(report.rel_var_nu) << "\n";
    };
  });

  // sweep -------------------------------------------------------------------
  struct {
    Common common;
    std::string means = "0,0:4,0";
    double std = 1.0;
    int n = 500;
    std::string distances;
    int steps = 20;
    double max_distance = 0.0;
    int classifiers = 50;
    double g_floor = kDefaultGFloor;
    std::string out;
  } sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "R_nu of random classifiers at growing distance from the baseline");
  AddCommon(sweep_cmd, sweep.common);
  sweep_cmd->add_option("--means", sweep.means, "The two class means, a:b");
  sweep_cmd->add_option("--std", sweep.std, "Shared isotropic standard deviation");
  sweep_cmd->add_option("--n", sweep.n, "Samples per class");
  sweep_cmd->add_option("--distances", sweep.distances,
                        "Explicit distance list starting at 0 (overrides --steps)");
  sweep_cmd->add_option("--steps", sweep.steps, "Number of evenly spaced distances");
  sweep_cmd->add_option("--max-distance", sweep.max_distance,
                        "Largest distance; 0 means |mean_b - mean_a|");
  sweep_cmd->add_option("--classifiers", sweep.classifiers, "Classifiers per distance");
  sweep_cmd->add_option("--g-floor", sweep.g_floor, "Exclude samples with g(loss) <= this");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV (default sweep.csv)");
  sweep_cmd->callback([&] {
    action = [&] {
      GaussianSpec spec;
      std::vector<double> distances;
      CheckUsage([&] {
        const auto means = ParseMeans(sweep.means);
        if (means.size() != 2) throw ArgumentError("--means: sweep needs exactly two means");
        spec.mean_a = means[0];
        spec.mean_b = means[1];
        spec.std = sweep.std;
        spec.n_per_class = sweep.n;
        spec.seed = sweep.common.seed;
        spec.Validate();
        if (!sweep.distances.empty()) {
          distances = ParseDoubles(sweep.distances, "--distances");
        } else {
          if (sweep.steps < 1) throw ArgumentError("--steps must be >= 1");
          if (sweep.max_distance < 0.0) throw ArgumentError("--max-distance must be >= 0");
          const double top = sweep.max_distance > 0.0 ? sweep.max_distance
                                                      : (spec.mean_b - spec.mean_a).norm();
          for (int i = 0; i < sweep.steps; ++i) {
            distances.push_back(sweep.steps == 1 ? 0.0 : top * i / (sweep.steps - 1));
          }
        }
        if (distances.front() != 0.0 || !std::is_sorted(distances.begin(), distances.end())) {
          throw ArgumentError("--distances must be ascending and start at 0");
        }
        if (sweep.classifiers < 1) throw ArgumentError("--classifiers must be >= 1");
        if (!(sweep.g_floor > 0.0)) throw ArgumentError("--g-floor must be > 0");
      });
      const auto result = DistanceSweep(spec, distances, sweep.classifiers, sweep.common.seed,
                                        sweep.common.workers, sweep.g_floor);
      WriteFileAtomic(DefaultPath(sweep.out, "sweep.csv"), SweepCsv(result, sweep.common.seed));
      const double rho = distances.size() >= 2
                             ? SpearmanCorrelation(result.distances, result.normalized_scores)
                             : 0.0;
      out << "sweep seed=" << sweep.common.seed << " spearman=" << Num(rho)
          << " final_score=" << Num(result.normalized_scores.back()) << "\n";
    };
  });

  // heatmap -----------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    std::string noise = "0,0.25,0.5,1,1.5,2";
    std::string sizes;
    std::size_t working_size = 300;
    int repetitions = 50;
    std::string out;
  } heat;
  auto* heat_cmd = app.add_subcommand(
      "heatmap", "Accuracy error under fixed-norm noise vs. number of low-loss samples kept");
  AddCommon(heat_cmd, heat.common);
  AddModelData(heat_cmd, heat.md);
  heat_cmd->add_option("--noise", heat.noise, "Noise L2 norms");
  heat_cmd->add_option("--sizes", heat.sizes,
                       "Kept sample counts (default: ten steps down from the working size)");
  heat_cmd->add_option("--working-size", heat.working_size,
                       "Random working subset size, capped at |D|");
  heat_cmd->add_option("--repetitions", heat.repetitions, "Noise draws per cell");
  heat_cmd->add_option("--out", heat.out, "Output CSV (default heatmap.csv)");
  heat_cmd->callback([&] {
    action = [&] {
      std::vector<double> noise;
      CheckUsage([&] {
        noise = ParseDoubles(heat.noise, "--noise");
        for (double s : noise) {
          if (!(s >= 0.0)) throw ArgumentError("--noise levels must be >= 0");
        }
        if (heat.repetitions < 1) throw ArgumentError("--repetitions must be >= 1");
        if (heat.working_size < 1) throw ArgumentError("--working-size must be >= 1");
      });
      RequireFile(heat.md.model);
      RequireFile(heat.md.data);
      const AnyModel model = LoadModel(heat.md.model);
      const Classifier& clf = AsClassifier(model);
      const Dataset full = LoadForModel(heat.md.data, heat.md.header, clf);
      const std::size_t working = std::min(heat.working_size, full.size());
      const Dataset data =
          RandomSubset(full, working, DeriveSeed(heat.common.seed, "heatmap-subset", 0));
      std::vector<std::size_t> sizes;
      CheckUsage([&] {
        if (heat.sizes.empty()) {
          for (int i = 10; i >= 1; --i) {
            sizes.push_back(std::max<std::size_t>(1, working * static_cast<std::size_t>(i) / 10));
          }
        } else {
          sizes = ParseCounts(heat.sizes, "--sizes");
        }
        for (std::size_t n : sizes) {
          if (n > working) throw ArgumentError("--sizes entries must not exceed the working size");
        }
      });
      const auto grid = NoiseAccuracyHeatmap(clf, data, noise, sizes, heat.repetitions,
                                             heat.common.seed, heat.common.workers);
      WriteFileAtomic(DefaultPath(heat.out, "heatmap.csv"), HeatmapCsv(grid, heat.common.seed));
      out << "heatmap seed=" << heat.common.seed << " cells=" << grid.error.size()
          << " max_error=" << Num(grid.error.maxCoeff()) << "\n";
    };
  });

  // mce-curve ---------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    std::string kept;
    std::size_t working_size = 300;
    int draws = 10;
    double scale = 1.0;
    std::vector<std::string> corrupted;
    bool builtin = true;
    std::string out;
  } mce;
  auto* mce_cmd = app.add_subcommand(
      "mce-curve", "Mean corruption error vs. number of low-loss samples kept");
  AddCommon(mce_cmd, mce.common);
  AddModelData(mce_cmd, mce.md);
  mce_cmd->add_option("--kept", mce.kept,
                      "Kept sample counts (default: ten steps up to the working size)");
  mce_cmd->add_option("--working-size", mce.working_size, "Random subset size per draw, capped at |D|");
  mce_cmd->add_option("--draws", mce.draws, "Random subsets averaged");
  mce_cmd->add_option("--scale", mce.scale, "Magnitude multiplier of the built-in corruptions");
  mce_cmd->add_option("--corrupted", mce.corrupted,
                      "Index-paired corrupted copies of --data (CSV, repeatable)");
  mce_cmd->add_flag("--builtin,!--no-builtin", mce.builtin, "Include the built-in corruptions");
  mce_cmd->add_option("--out", mce.out, "Output CSV (default mce_curve.csv)");
  mce_cmd->callback([&] {
    action = [&] {
      CheckUsage([&] {
        if (mce.draws < 1) throw ArgumentError("--draws must be >= 1");
        if (!(mce.scale > 0.0)) throw ArgumentError("--scale must be > 0");
        if (mce.working_size < 1) throw ArgumentError("--working-size must be >= 1");
        if (!mce.builtin && mce.corrupted.empty()) {
          throw ArgumentError("no corruptions selected");
        }
      });
      RequireFile(mce.md.model);
      RequireFile(mce.md.data);
      for (const auto& path : mce.corrupted) RequireFile(path);
      const AnyModel model = LoadModel(mce.md.model);
      const Classifier& clf = AsClassifier(model);
      const Dataset data = LoadForModel(mce.md.data, mce.md.header, clf);
      const std::size_t working = std::min(mce.working_size, data.size());
      std::vector<std::size_t> kept;
      CheckUsage([&] {
        if (mce.kept.empty()) {
          for (int i = 1; i <= 10; ++i) {
            kept.push_back(std::max<std::size_t>(1, working * static_cast<std::size_t>(i) / 10));
          }
        } else {
          kept = ParseCounts(mce.kept, "--kept");
        }
        for (std::size_t k : kept) {
          if (k > working) throw ArgumentError("--kept entries must not exceed the working size");
        }
      });
      CorruptionSuite suite;
      if (mce.builtin) suite = BuiltinCorruptionSuite(mce.scale);
      for (const auto& path : mce.corrupted) {
        Dataset corrupted = LoadForModel(path, mce.md.header, clf);
        if (corrupted.size() != data.size()) {
          throw FormatError("corrupted dataset " + path + " has " +
                            std::to_string(corrupted.size()) + " samples, expected " +
                            std::to_string(data.size()));
        }
        suite.push_back(DatasetCorruption(path, std::move(corrupted)));
      }
      const auto curve = CorruptionErrorCurve(clf, data, suite, kept, working, mce.draws,
                                              mce.common.seed, mce.common.workers);
      WriteFileAtomic(DefaultPath(mce.out, "mce_curve.csv"), CurveCsv(curve, mce.common.seed));
      out << "mce-curve seed=" << mce.common.seed << " corruptions=" << suite.size()
          << " mce_min=" << Num(curve.front().mce) << " mce_max=" << Num(curve.back().mce)
          << "\n";
    };
  });

  // tradeoff ----------------------------------------------------------------
  struct {
    Common common;
    ModelData md;
    TradeoffConfig cfg;
    std::string norm = "l2";
    std::string out;
  } trade;
  auto* trade_cmd = app.add_subcommand(
      "tradeoff", "Largest noise scale keeping the misclassification rate <= alpha");
  AddCommon(trade_cmd, trade.common);
  AddModelData(trade_cmd, trade.md);
  trade_cmd->add_option("--alpha", trade.cfg.alpha, "Tolerated misclassification probability");
  trade_cmd->add_option("--trials", trade.cfg.trials, "Monte-Carlo draws per probe");
  trade_cmd->add_option("--norm", trade.norm, "Noise ball")
      ->check(CLI::IsMember({"l2", "linf"}));
  trade_cmd->add_option("--precision", trade.cfg.precision, "Absolute precision on epsilon");
  trade_cmd->add_option("--initial-scale", trade.cfg.initial_scale, "First bracketing scale");
  trade_cmd->add_option("--max-doublings", trade.cfg.max_doublings, "Bracketing doublings cap");
  trade_cmd->add_option("--out", trade.out, "Output CSV (default tradeoff.csv)");
  trade_cmd->callback([&] {
    action = [&] {
      trade.cfg.seed = trade.common.seed;
      trade.cfg.ball = trade.norm == "linf" ? NoiseBall::kLinf : NoiseBall::kL2;
      CheckUsage([&] { trade.cfg.Validate(); });
      RequireFile(trade.md.model);
      RequireFile(trade.md.data);
      const AnyModel model = LoadModel(trade.md.model);
      const Classifier& clf = AsClassifier(model);
      const Dataset data = LoadForModel(trade.md.data, trade.md.header, clf);
      std::vector<double> eps(data.size());
      ParallelFor(data.size(), trade.common.workers, [&](std::size_t i) {
        eps[i] = EstimateTradeoff(clf, data[i].features, data[i].label, trade.cfg, i);
      });
      std::string csv = "sample_index,label,predicted,epsilon\n";
      double total = 0.0;
      std::size_t finite = 0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        csv += std::to_string(i) + "," + std::to_string(data[i].label) + "," +
               std::to_string(clf.Predict(data[i].features)) + "," + FormatDouble(eps[i]) + "\n";
        if (std::isfinite(eps[i])) {
          total += eps[i];
          ++finite;
        }
      }
      WriteFileAtomic(DefaultPath(trade.out, "tradeoff.csv"), csv);
      out << "tradeoff seed=" << trade.common.seed << " alpha=" << Num(trade.cfg.alpha)
          << " mean_epsilon=" << Num(finite ? total / static_cast<double>(finite) : 0.0)
          << " unbounded=" << data.size() - finite << "\n";
    };
  });

  try {
    std::vector<std::string> expanded;
    try {
      expanded = ExpandConfig(args);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const FormatError& e) {
      err << "data error: " << e.what() << "\n";
      return kExitData;
    }
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ArgumentError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace robscore::cli
