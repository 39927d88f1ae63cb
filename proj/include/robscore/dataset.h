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

#ifndef ROBSCORE_DATASET_H_
#define ROBSCORE_DATASET_H_

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace robscore {

// One labelled feature vector. Labels are 1-based class indices.
struct Sample {
  Eigen::VectorXd features;
  int label = 1;
};

// Immutable collection of samples sharing dimension `dim()` and labels in
// {1..num_classes()}.
class Dataset {
 public:
  Dataset(std::vector<Sample> samples, int dim, int num_classes);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  int dim() const { return dim_; }
  int num_classes() const { return num_classes_; }

  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<Sample>& samples() const { return samples_; }

  // Samples at `indices`, in the given order, with the same dim and K.
  Dataset Select(std::span<const std::size_t> indices) const;

 private:
  std::vector<Sample> samples_;
  int dim_;
  int num_classes_;
};

struct GaussianSpec {
  Eigen::VectorXd mean_a;
  Eigen::VectorXd mean_b;
  double std = 1.0;
  int n_per_class = 100;
  uint64_t seed = 0;

  void Validate() const;
};

// K isotropic Gaussians sharing one standard deviation; class j+1 is drawn
// around means[j].
struct GaussianMixtureSpec {
  std::vector<Eigen::VectorXd> means;
  double std = 1.0;
  int n_per_class = 100;
  uint64_t seed = 0;

  void Validate() const;
};

Dataset GenerateTwoGaussians(const GaussianSpec& spec);
Dataset GenerateGaussianMixture(const GaussianMixtureSpec& spec);

// CSV rows: d feature values followed by a 1-based integer label.
Dataset LoadCsv(const std::filesystem::path& path, bool has_header = false);
void SaveCsv(const Dataset& data, const std::filesystem::path& path,
             bool with_header = false);

// MNIST-style IDX pair (ubyte images, ubyte labels). Pixels are scaled to
// [0, 1] and labels shifted to 1-based.
Dataset LoadIdx(const std::filesystem::path& images_path,
                const std::filesystem::path& labels_path,
                std::optional<std::size_t> limit = std::nullopt);

// Indices of the n smallest losses, ascending by loss with ties broken by
// index; the returned indices are then sorted so the original order is kept.
std::vector<std::size_t> LowestLossIndices(std::span<const double> losses,
                                           std::size_t n);

Dataset LowestLossSubset(const Dataset& data, std::span<const double> losses,
                         std::size_t n);

struct LossSplit {
  std::vector<std::size_t> easy;
  std::vector<std::size_t> hard;
};

// Lower half by loss is easy; for odd sizes the median goes to the hard half.
LossSplit SplitIndicesByLoss(std::span<const double> losses);
std::pair<Dataset, Dataset> SplitByLoss(const Dataset& data,
                                        std::span<const double> losses);

std::vector<std::size_t> RandomSubsetIndices(std::size_t population,
                                             std::size_t n, uint64_t seed);
Dataset RandomSubset(const Dataset& data, std::size_t n, uint64_t seed);

}  // namespace robscore

#endif  // ROBSCORE_DATASET_H_
