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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.h"
#include "robscore/errors.h"
#include "robscore/scores.h"

namespace robscore {
namespace {

using ::testing::StartsWith;

LinearModel SqrtTwoModel() {
  Eigen::MatrixXd beta(3, 2);
  beta << 1, 0, -1, 0, 0, 1;
  return LinearModel(beta, Eigen::Vector3d::Zero());
}

LinearModel RandomLinear(int k, int d, RandomStream& rng) {
  Eigen::MatrixXd beta(k, d);
  Eigen::VectorXd b(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < d; ++c) beta(r, c) = rng.Normal();
    b[r] = rng.Normal();
  }
  return LinearModel(beta, b);
}

Eigen::VectorXd RandomPoint(int d, RandomStream& rng) {
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x[i] = 2.0 * rng.Normal();
  return x;
}

SearchConfig FineSearch(uint64_t seed) {
  SearchConfig cfg;
  cfg.precision = 1e-3;
  cfg.seed = seed;
  return cfg;
}

TEST(ExactRadiusTest, ThreeClassExample) {
  const LinearRadius r = ExactLinearRadius(SqrtTwoModel(), Eigen::Vector2d(2, 0), 1);
  EXPECT_NEAR(r.radius, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(r.achieving_class, 3);
}

TEST(ExactRadiusTest, MisclassifiedIsZero) {
  const LinearRadius r = ExactLinearRadius(SqrtTwoModel(), Eigen::Vector2d(2, 0), 2);
  EXPECT_EQ(r.radius, 0.0);
}

TEST(ExactRadiusTest, MatchesBruteForceOracle) {
  RandomStream rng(101);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 5;
    const int d = 1 + trial % 8;
    const LinearModel m = RandomLinear(k, d, rng);
    const Eigen::VectorXd x = RandomPoint(d, rng);
    const int label = m.Predict(x);
    const LinearRadius r = ExactLinearRadius(m, x, label);
    const auto oracle = testing::BruteForceLinearRadius(m, x, label);
    EXPECT_NEAR(r.radius, oracle.distance, 1e-12 * (1.0 + oracle.distance));
    EXPECT_EQ(r.achieving_class, oracle.competitor);
    ++checked;
  }
  EXPECT_EQ(checked, 500);
}

TEST(ExactRadiusTest, AgreesWithDirectionalScanInThePlane) {
  RandomStream rng(102);
  for (int trial = 0; trial < 10; ++trial) {
    const LinearModel m = RandomLinear(3, 2, rng);
    const Eigen::VectorXd x = RandomPoint(2, rng);
    const int label = m.Predict(x);
    const double exact = ExactLinearRadius(m, x, label).radius;
    const double scan = testing::DirectionalScanRadius(m, x, label, 3600, 50.0, 1e-3);
    // Angular resolution 0.1 degree costs at most r(1 - cos) ~ 1.5e-6 r.
    EXPECT_NEAR(scan, exact, 2e-3 + 1e-5 * exact);
  }
}

TEST(ExactRadiusTest, BinomialIdentity) {
  RandomStream rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 10;
    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) w[i] = rng.Normal();
    const LinearModel m = LinearModel::Binomial(w, rng.Normal());
    const Eigen::VectorXd x = RandomPoint(d, rng);
    const int label = m.Predict(x);
    const double loss = m.Loss(x, label);
    if (!(loss < std::log(2.0)) || loss <= 0.0) continue;
    EXPECT_NEAR(ExactLinearRadius(m, x, label).radius, GTransform(loss) / w.norm(),
                1e-9 * GTransform(loss) / w.norm() + 1e-300);
  }
}

TEST(ExactRadiusTest, DegenerateModels) {
  const LinearModel zero = LinearModel::Zero(3, 2);
  EXPECT_THROW(ExactLinearRadius(zero, Eigen::Vector2d(1, 1), 1), DegenerateModelError);
  // Equal weights, different offsets: class 1 always wins, nothing can flip it.
  Eigen::MatrixXd beta(2, 2);
  beta << 1, 1, 1, 1;
  const LinearModel parallel(beta, Eigen::Vector2d(1, 0));
  EXPECT_TRUE(std::isinf(ExactLinearRadius(parallel, Eigen::Vector2d(3, 4), 1).radius));
}

TEST(SamplingTest, DirectionsAndBalls) {
  RandomStream rng(7);
  double mean_norm = 0.0;
  for (int i = 0; i < 2000; ++i) {
    EXPECT_NEAR(SphereDirection(5, rng).norm(), 1.0, 1e-14);
    const Vector p = BallPointL2(3, rng);
    EXPECT_LE(p.norm(), 1.0);
    mean_norm += p.norm();
    EXPECT_LE(BallPointLinf(4, rng).lpNorm<Eigen::Infinity>(), 1.0);
  }
  // E|Z| for the uniform 3-ball is 3/4.
  EXPECT_NEAR(mean_norm / 2000, 0.75, 0.02);
}

TEST(BlackBoxTest, ThreeClassExampleAtFinePrecision) {
  const auto est = EstimateRadiusBlackBox(SqrtTwoModel(), Eigen::Vector2d(2, 0), 1, FineSearch(1));
  EXPECT_NEAR(est.value, std::sqrt(2.0), 1e-2);
  EXPECT_LE(est.upper - est.lower, 2e-3);
  EXPECT_LE(est.lower, est.value);
  EXPECT_LE(est.value, est.upper);
  EXPECT_GT(est.evaluations, 0u);
}

TEST(BlackBoxTest, BracketStaysValidAlongTheTrace) {
  const LinearModel m = SqrtTwoModel();
  const Eigen::Vector2d x(2, 0);
  std::vector<ProbeRecord> trace;
  const auto est = EstimateRadiusBlackBox(m, x, 1, FineSearch(2), 0, &trace);
  ASSERT_FALSE(trace.empty());
  const double exact = std::sqrt(2.0);
  for (const auto& probe : trace) {
    if (probe.adversarial_found) {
      EXPECT_NE(m.Predict(x + probe.witness), 1);
      EXPECT_NEAR(probe.witness.norm(), probe.radius, 1e-12 * probe.radius);
      EXPECT_GE(probe.radius, exact - 1e-12);
    }
  }
  EXPECT_GE(est.lower, 0.0);
  EXPECT_GE(est.upper, exact - 1e-12);
}

TEST(BlackBoxTest, NeverBeatsTheExactRadius) {
  RandomStream rng(104);
  SearchConfig cfg = FineSearch(3);
  cfg.directions_per_level = 500;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    const LinearModel m = RandomLinear(3, d, rng);
    const Eigen::VectorXd x = RandomPoint(d, rng);
    const int label = m.Predict(x);
    const double exact = ExactLinearRadius(m, x, label).radius;
    const auto est = EstimateRadiusBlackBox(m, x, label, cfg, trial);
    EXPECT_GE(est.value, exact - 2 * cfg.precision);
    EXPECT_GE(est.upper, exact - 1e-12);
  }
}

TEST(BlackBoxTest, MisclassifiedAndUnreachable) {
  const auto mis = EstimateRadiusBlackBox(SqrtTwoModel(), Eigen::Vector2d(2, 0), 2, FineSearch(1));
  EXPECT_EQ(mis.value, 0.0);
  EXPECT_EQ(mis.upper, 0.0);
  SearchConfig cfg;
  cfg.directions_per_level = 10;
  cfg.max_doublings = 5;
  const auto inf = EstimateRadiusBlackBox(LinearModel::Zero(2, 2), Eigen::Vector2d(1, 1), 1, cfg);
  EXPECT_TRUE(std::isinf(inf.value));
  EXPECT_TRUE(std::isinf(inf.upper));
  EXPECT_EQ(inf.lower, 32.0);
}

TEST(BlackBoxTest, DeterministicPerSampleAndAcrossWorkers) {
  GaussianMixtureSpec spec;
  spec.means = {Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 0), Eigen::Vector2d(0, 3)};
  spec.n_per_class = 10;
  const Dataset data = GenerateGaussianMixture(spec);
  RandomStream rng(5);
  const LinearModel m = RandomLinear(3, 2, rng);
  SearchConfig cfg = FineSearch(9);
  cfg.directions_per_level = 200;
  const auto one = BatchRadii(m, data, cfg, 1);
  const auto many = BatchRadii(m, data, cfg, 8);
  ASSERT_EQ(one.size(), data.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].value, many[i].value);
    EXPECT_EQ(one[i].evaluations, many[i].evaluations);
    const auto single = EstimateRadiusBlackBox(m, data[i].features, data[i].label, cfg, i);
    EXPECT_EQ(single.value, one[i].value);
  }
}

TEST(BlackBoxTest, ConfigValidation) {
  SearchConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.precision = 0.0;
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = SearchConfig{};
  cfg.directions_per_level = 0;
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = SearchConfig{};
  cfg.max_doublings = 1;
  cfg.precision = 5.0;  // not below initial_radius * 2^max_doublings
  EXPECT_THROW(cfg.Validate(), ArgumentError);
}

TEST(ModelRadiiTest, LinearModelsUseTheExactRadius) {
  GaussianMixtureSpec spec;
  spec.means = {Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 0)};
  spec.n_per_class = 5;
  const Dataset data = GenerateGaussianMixture(spec);
  const LinearModel m = LinearModel::Binomial(Eigen::Vector2d(1, 0), -1.5);
  const auto radii = ModelRadii(AnyModel(m), data, SearchConfig{}, 1);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(radii[i].value, ExactLinearRadius(m, data[i].features, data[i].label).radius);
    EXPECT_EQ(radii[i].evaluations, 0u);
  }
  EXPECT_THAT(RadiiCsv(m, data, radii),
              StartsWith("sample_index,label,predicted,loss,radius_value,radius_lower,"
                         "radius_upper,evaluations\n0,1,"));
}

// One-dimensional binomial model with boundary at 0 and x at distance r: under
// uniform noise on [-eps, eps] the flip probability is (eps - r) / (2 eps).
TEST(TradeoffTest, OneDimensionalClosedForm) {
  const LinearModel m = LinearModel::Binomial(Eigen::VectorXd::Ones(1), 0.0);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.0);
  const auto f = MisclassificationProbability(m, x, 2, 2.0, NoiseBall::kLinf, 20000, 3);
  EXPECT_NEAR(f.probability, 0.25, 4 * f.standard_error);
  EXPECT_NEAR(f.standard_error, std::sqrt(0.25 * 0.75 / 20000), 1e-3);
  EXPECT_EQ(MisclassificationProbability(m, x, 2, 0.0, NoiseBall::kLinf, 100, 3).probability, 0.0);

  TradeoffConfig cfg;
  cfg.alpha = 0.1;
  cfg.trials = 20000;
  cfg.ball = NoiseBall::kLinf;
  cfg.precision = 1e-4;
  // Closed form: eps = r / (1 - 2 alpha) = 1.25.
  EXPECT_NEAR(EstimateTradeoff(m, x, 2, cfg), 1.25, 0.03);
  EXPECT_EQ(EstimateTradeoff(m, x, 1, cfg), 0.0);
}

TEST(TradeoffTest, ValidationAndDeterminism) {
  TradeoffConfig cfg;
  cfg.alpha = 1.0;
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = TradeoffConfig{};
  cfg.trials = 10;
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = TradeoffConfig{};
  const LinearModel m = SqrtTwoModel();
  EXPECT_EQ(EstimateTradeoff(m, Eigen::Vector2d(2, 0), 1, cfg, 4),
            EstimateTradeoff(m, Eigen::Vector2d(2, 0), 1, cfg, 4));
}

}  // namespace
}  // namespace robscore
