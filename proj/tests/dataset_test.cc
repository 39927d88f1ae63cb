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

#include "robscore/dataset.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <set>

#include "oracles.h"
#include "robscore/errors.h"
#include "robscore/rng.h"

namespace robscore {
namespace {

using ::testing::HasSubstr;
using testing::TempDir;

GaussianMixtureSpec ThreeClassSpec(uint64_t seed) {
  GaussianMixtureSpec spec;
  spec.means = {Eigen::Vector2d(0, 0), Eigen::Vector2d(4, 0), Eigen::Vector2d(0, 4)};
  spec.std = 0.5;
  spec.n_per_class = 40;
  spec.seed = seed;
  return spec;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

template <typename T>
std::string ExpectThrowMessage(T&& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected FormatError";
  return "";
}

TEST(DatasetTest, RejectsInconsistentSamples) {
  std::vector<Sample> samples = {{Eigen::Vector2d(1, 2), 1}, {Eigen::Vector3d(1, 2, 3), 2}};
  EXPECT_THROW(Dataset(samples, 2, 2), ArgumentError);
  EXPECT_THROW(Dataset({{Eigen::Vector2d(1, 2), 3}}, 2, 2), ArgumentError);
  EXPECT_THROW(Dataset({{Eigen::Vector2d(1, 2), 0}}, 2, 2), ArgumentError);
  EXPECT_THROW(Dataset({}, 2, 1), ArgumentError);
  EXPECT_NO_THROW(Dataset({}, 2, 2));
}

TEST(DatasetTest, SelectKeepsOrderAndMetadata) {
  const Dataset data = GenerateGaussianMixture(ThreeClassSpec(1));
  const std::vector<std::size_t> idx = {5, 0, 90};
  const Dataset sub = data.Select(idx);
  ASSERT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.num_classes(), 3);
  EXPECT_EQ(sub[0].features, data[5].features);
  EXPECT_EQ(sub[2].label, data[90].label);
  const std::vector<std::size_t> bad = {data.size()};
  EXPECT_THROW(data.Select(bad), ArgumentError);
}

TEST(GaussianTest, CountsLabelsAndMeans) {
  GaussianMixtureSpec spec = ThreeClassSpec(7);
  spec.n_per_class = 2000;
  const Dataset data = GenerateGaussianMixture(spec);
  ASSERT_EQ(data.size(), 6000u);
  EXPECT_EQ(data.num_classes(), 3);
  EXPECT_EQ(data.dim(), 2);
  for (int c = 1; c <= 3; ++c) {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    double var = 0.0;
    int count = 0;
    for (const auto& s : data.samples()) {
      if (s.label != c) continue;
      mean += s.features;
      ++count;
    }
    mean /= count;
    for (const auto& s : data.samples()) {
      if (s.label == c) var += (s.features - spec.means[c - 1]).squaredNorm();
    }
    var /= 2.0 * count;
    EXPECT_EQ(count, 2000);
    // Standard error of each mean coordinate is 0.5/sqrt(2000) ~ 0.011.
    EXPECT_LT((mean - spec.means[c - 1]).norm(), 0.06);
    EXPECT_NEAR(var, 0.25, 0.03);
  }
}

TEST(GaussianTest, SeedDeterminesSamples) {
  const Dataset a = GenerateGaussianMixture(ThreeClassSpec(3));
  const Dataset b = GenerateGaussianMixture(ThreeClassSpec(3));
  const Dataset c = GenerateGaussianMixture(ThreeClassSpec(4));
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].features, b[i].features);
    any_diff |= a[i].features != c[i].features;
  }
  EXPECT_TRUE(any_diff);
}

TEST(GaussianTest, TwoGaussiansMatchesMixture) {
  GaussianSpec spec;
  spec.mean_a = Eigen::Vector2d(0, 0);
  spec.mean_b = Eigen::Vector2d(4, 0);
  spec.n_per_class = 10;
  spec.seed = 11;
  GaussianMixtureSpec mix;
  mix.means = {spec.mean_a, spec.mean_b};
  mix.n_per_class = 10;
  mix.seed = 11;
  const Dataset a = GenerateTwoGaussians(spec);
  const Dataset b = GenerateGaussianMixture(mix);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].features, b[i].features);
}

TEST(GaussianTest, ValidationNamesTheField) {
  GaussianSpec spec;
  spec.mean_a = Eigen::Vector2d(0, 0);
  spec.mean_b = Eigen::Vector2d(4, 0);
  spec.std = 0.0;
  try {
    spec.Validate();
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_THAT(e.what(), HasSubstr("std"));
  }
  spec.std = 1.0;
  spec.n_per_class = 0;
  try {
    spec.Validate();
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_THAT(e.what(), HasSubstr("n_per_class"));
  }
  spec.n_per_class = 5;
  spec.mean_b = spec.mean_a;
  EXPECT_THROW(spec.Validate(), ArgumentError);
}

TEST(CsvTest, RoundTripIsBitExact) {
  TempDir dir;
  GaussianMixtureSpec spec = ThreeClassSpec(9);
  spec.std = 1.0 / 3.0;
  const Dataset data = GenerateGaussianMixture(spec);
  for (bool header : {false, true}) {
    const std::string path = dir.File(header ? "h.csv" : "n.csv");
    SaveCsv(data, path, header);
    const Dataset back = LoadCsv(path, header);
    ASSERT_EQ(back.size(), data.size());
    EXPECT_EQ(back.num_classes(), 3);
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(back[i].label, data[i].label);
      for (int c = 0; c < data.dim(); ++c) {
        EXPECT_EQ(back[i].features[c], data[i].features[c]);
      }
    }
  }
}

TEST(CsvTest, AcceptsCommentsAndIntegralLabels) {
  TempDir dir;
  const std::string path = dir.File("c.csv");
  WriteText(path, "# a comment\n0.5,1.5,1\n\n-2,3e-1,2.0\n");
  const Dataset data = LoadCsv(path);
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[1].label, 2);
  EXPECT_DOUBLE_EQ(data[1].features[1], 0.3);
}

TEST(CsvTest, SingleLabelStillHasTwoClasses) {
  TempDir dir;
  const std::string path = dir.File("one.csv");
  WriteText(path, "1,1\n2,1\n");
  EXPECT_EQ(LoadCsv(path).num_classes(), 2);
}

TEST(CsvTest, ErrorsCarryRowNumbers) {
  TempDir dir;
  const std::string path = dir.File("bad.csv");
  WriteText(path, "1,2,1\n1,2,3,1\n");
  EXPECT_THAT(ExpectThrowMessage([&] { LoadCsv(path); }), HasSubstr("row 2"));
  WriteText(path, "1,2,1\n1,x,1\n");
  EXPECT_THAT(ExpectThrowMessage([&] { LoadCsv(path); }), HasSubstr("row 2"));
  WriteText(path, "1,2,1.5\n");
  EXPECT_THAT(ExpectThrowMessage([&] { LoadCsv(path); }), HasSubstr("row 1"));
  WriteText(path, "1,2,0\n");
  EXPECT_THROW(LoadCsv(path), FormatError);
  WriteText(path, "1,nan,1\n");
  EXPECT_THROW(LoadCsv(path), FormatError);
  WriteText(path, "# only a comment\n");
  EXPECT_THAT(ExpectThrowMessage([&] { LoadCsv(path); }), HasSubstr("no samples"));
  EXPECT_THROW(LoadCsv(dir.File("missing.csv")), FormatError);
}

std::string BigEndian(uint32_t v) {
  std::string s(4, '\0');
  for (int i = 0; i < 4; ++i) s[i] = static_cast<char>((v >> (24 - 8 * i)) & 0xff);
  return s;
}

void WriteIdx(const std::string& images, const std::string& labels, uint32_t n,
              uint32_t payload_images) {
  std::string img = BigEndian(0x803) + BigEndian(n) + BigEndian(2) + BigEndian(2);
  for (uint32_t i = 0; i < payload_images; ++i) {
    for (int p = 0; p < 4; ++p) img.push_back(static_cast<char>(i * 10 + p * 85));
  }
  std::string lbl = BigEndian(0x801) + BigEndian(n);
  for (uint32_t i = 0; i < n; ++i) lbl.push_back(static_cast<char>(i % 10));
  WriteText(images, img);
  WriteText(labels, lbl);
}

TEST(IdxTest, DecodesPixelsAndShiftsLabels) {
  TempDir dir;
  const std::string img = dir.File("img"), lbl = dir.File("lbl");
  WriteIdx(img, lbl, 3, 3);
  const Dataset data = LoadIdx(img, lbl);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_EQ(data.dim(), 4);
  EXPECT_EQ(data[0].label, 1);
  EXPECT_EQ(data[2].label, 3);
  EXPECT_DOUBLE_EQ(data[0].features[3], 255.0 / 255.0);
  EXPECT_DOUBLE_EQ(data[1].features[1], 95.0 / 255.0);
  EXPECT_EQ(LoadIdx(img, lbl, 2).size(), 2u);
}

TEST(IdxTest, RejectsMalformedFiles) {
  TempDir dir;
  const std::string img = dir.File("img"), lbl = dir.File("lbl");
  WriteIdx(img, lbl, 3, 2);
  EXPECT_THAT(ExpectThrowMessage([&] { LoadIdx(img, lbl); }), HasSubstr("truncated"));
  WriteIdx(img, lbl, 3, 3);
  // Swapped files: magic numbers do not match their role.
  EXPECT_THAT(ExpectThrowMessage([&] { LoadIdx(lbl, img); }), HasSubstr("magic"));
  std::string other = BigEndian(0x801) + BigEndian(2) + std::string("\0\1", 2);
  WriteText(lbl, other);
  EXPECT_THAT(ExpectThrowMessage([&] { LoadIdx(img, lbl); }), HasSubstr("mismatch"));
}

TEST(SubsetTest, LowestLossBreaksTiesByIndex) {
  const std::vector<double> losses = {0.3, 0.1, 0.3, 0.05, 0.3};
  EXPECT_EQ(LowestLossIndices(losses, 3), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(LowestLossIndices(losses, 4), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_THROW(LowestLossIndices(losses, 0), ArgumentError);
  EXPECT_THROW(LowestLossIndices(losses, 6), ArgumentError);
}

TEST(SubsetTest, SplitSendsMedianToHardHalf) {
  const std::vector<double> losses = {0.9, 0.1, 0.5, 0.3, 0.7};
  const LossSplit split = SplitIndicesByLoss(losses);
  EXPECT_EQ(split.easy, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(split.hard, (std::vector<std::size_t>{0, 2, 4}));
  const std::vector<double> one = {0.1};
  EXPECT_THROW(SplitIndicesByLoss(one), ArgumentError);
}

TEST(SubsetTest, SplitPartitionsEveryIndex) {
  RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform() * 40);
    std::vector<double> losses(n);
    for (auto& l : losses) l = std::floor(rng.Uniform() * 5.0);  // many ties
    const LossSplit split = SplitIndicesByLoss(losses);
    EXPECT_EQ(split.easy.size(), static_cast<std::size_t>(n / 2));
    std::set<std::size_t> all(split.easy.begin(), split.easy.end());
    all.insert(split.hard.begin(), split.hard.end());
    EXPECT_EQ(all.size(), static_cast<std::size_t>(n));
    double easy_max = -1.0, hard_min = 1e9;
    for (auto i : split.easy) easy_max = std::max(easy_max, losses[i]);
    for (auto i : split.hard) hard_min = std::min(hard_min, losses[i]);
    EXPECT_LE(easy_max, hard_min);
  }
}

TEST(SubsetTest, RandomSubsetIsDistinctAndSeeded) {
  const auto a = RandomSubsetIndices(100, 30, 17);
  const auto b = RandomSubsetIndices(100, 30, 17);
  const auto c = RandomSubsetIndices(100, 30, 18);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 30u);
  for (auto i : a) EXPECT_LT(i, 100u);
  EXPECT_EQ(RandomSubsetIndices(10, 10, 1).size(), 10u);
  EXPECT_THROW(RandomSubsetIndices(10, 11, 1), ArgumentError);
}

}  // namespace
}  // namespace robscore
