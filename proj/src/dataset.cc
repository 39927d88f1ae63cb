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

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "robscore/errors.h"
#include "robscore/io.h"
#include "robscore/rng.h"

namespace robscore {

Dataset::Dataset(std::vector<Sample> samples, int dim, int num_classes)
    : samples_(std::move(samples)), dim_(dim), num_classes_(num_classes) {
  if (dim_ < 1) throw ArgumentError("dataset dimension must be >= 1");
  if (num_classes_ < 2) throw ArgumentError("dataset needs at least 2 classes");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Sample& s = samples_[i];
    if (s.features.size() != dim_) {
      throw ArgumentError("sample " + std::to_string(i) + " has dimension " +
                          std::to_string(s.features.size()) + ", expected " +
                          std::to_string(dim_));
    }
    if (s.label < 1 || s.label > num_classes_) {
      throw ArgumentError("sample " + std::to_string(i) + " has label " +
                          std::to_string(s.label) + " outside 1.." +
                          std::to_string(num_classes_));
    }
  }
}

Dataset Dataset::Select(std::span<const std::size_t> indices) const {
  std::vector<Sample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= samples_.size()) throw ArgumentError("subset index out of range");
    out.push_back(samples_[i]);
  }
  return Dataset(std::move(out), dim_, num_classes_);
}

void GaussianSpec::Validate() const {
  if (mean_a.size() == 0) throw ArgumentError("mean_a: must be non-empty");
  if (mean_b.size() != mean_a.size()) {
    throw ArgumentError("mean_b: dimension differs from mean_a");
  }
  if (mean_a == mean_b) throw ArgumentError("mean_b: must differ from mean_a");
  if (!(std > 0.0) || !std::isfinite(std)) throw ArgumentError("std: must be > 0");
  if (n_per_class < 1) throw ArgumentError("n_per_class: must be >= 1");
}

void GaussianMixtureSpec::Validate() const {
  if (means.size() < 2) throw ArgumentError("means: need at least 2 classes");
  const auto d = means.front().size();
  if (d == 0) throw ArgumentError("means: must be non-empty vectors");
  for (const auto& m : means) {
    if (m.size() != d) throw ArgumentError("means: dimensions differ");
    if (!m.allFinite()) throw ArgumentError("means: non-finite entry");
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t j = i + 1; j < means.size(); ++j) {
      if (means[i] == means[j]) throw ArgumentError("means: duplicate class mean");
    }
  }
  if (!(std > 0.0) || !std::isfinite(std)) throw ArgumentError("std: must be > 0");
  if (n_per_class < 1) throw ArgumentError("n_per_class: must be >= 1");
}

Dataset GenerateGaussianMixture(const GaussianMixtureSpec& spec) {
  spec.Validate();
  const int d = static_cast<int>(spec.means.front().size());
  const int k = static_cast<int>(spec.means.size());
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(k) * spec.n_per_class);
  for (int c = 0; c < k; ++c) {
    RandomStream rng(spec.seed, "gaussian-class", static_cast<uint64_t>(c));
    for (int i = 0; i < spec.n_per_class; ++i) {
      Sample s;
      s.features.resize(d);
      for (int j = 0; j < d; ++j) {
        s.features[j] = spec.means[c][j] + spec.std * rng.Normal();
      }
      s.label = c + 1;
      samples.push_back(std::move(s));
    }
  }
  return Dataset(std::move(samples), d, k);
}

Dataset GenerateTwoGaussians(const GaussianSpec& spec) {
  spec.Validate();
  GaussianMixtureSpec mix;
  mix.means = {spec.mean_a, spec.mean_b};
  mix.std = spec.std;
  mix.n_per_class = spec.n_per_class;
  mix.seed = spec.seed;
  return GenerateGaussianMixture(mix);
}

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

Dataset LoadCsv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open CSV file: " + path.string());
  std::vector<Sample> samples;
  std::size_t width = 0;
  int max_label = 0;
  std::string line;
  std::size_t row = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = SplitFields(line);
    if (fields.size() < 2) {
      throw FormatError("row " + std::to_string(row) +
                        ": need at least one feature and a label");
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw FormatError("row " + std::to_string(row) + ": expected " +
                        std::to_string(width) + " columns, found " +
                        std::to_string(fields.size()));
    }
    Sample s;
    s.features.resize(static_cast<Eigen::Index>(width - 1));
    try {
      for (std::size_t j = 0; j + 1 < width; ++j) {
        s.features[static_cast<Eigen::Index>(j)] = ParseDouble(fields[j]);
      }
      const double label = ParseDouble(fields.back());
      if (label != std::floor(label)) {
        throw FormatError("label is not an integer");
      }
      if (label < 1) throw FormatError("labels are 1-based, got " + FormatDouble(label));
      if (label > 1e9) throw FormatError("label too large");
      s.label = static_cast<int>(label);
    } catch (const FormatError& e) {
      throw FormatError("row " + std::to_string(row) + ": " + e.what());
    }
    if (!s.features.allFinite()) {
      throw FormatError("row " + std::to_string(row) + ": non-finite feature");
    }
    max_label = std::max(max_label, s.label);
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw FormatError("no samples in " + path.string());
  return Dataset(std::move(samples), static_cast<int>(width - 1),
                 std::max(2, max_label));
}

void SaveCsv(const Dataset& data, const std::filesystem::path& path,
             bool with_header) {
  std::string out;
  if (with_header) {
    for (int j = 0; j < data.dim(); ++j) out += "x" + std::to_string(j + 1) + ",";
    out += "label\n";
  }
  for (const Sample& s : data.samples()) {
    for (Eigen::Index j = 0; j < s.features.size(); ++j) {
      out += FormatDouble(s.features[j]);
      out += ',';
    }
    out += std::to_string(s.label);
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

namespace {

constexpr uint32_t kIdxImagesMagic = 0x00000803;
constexpr uint32_t kIdxLabelsMagic = 0x00000801;

uint32_t ReadBigEndian32(std::istream& in, const std::string& what) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (in.gcount() != 4) throw FormatError("truncated IDX header in " + what);
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) | (uint32_t{b[2]} << 8) |
         uint32_t{b[3]};
}

}  // namespace

Dataset LoadIdx(const std::filesystem::path& images_path,
                const std::filesystem::path& labels_path,
                std::optional<std::size_t> limit) {
  std::ifstream images(images_path, std::ios::binary);
  if (!images) throw FormatError("cannot open IDX images: " + images_path.string());
  std::ifstream labels(labels_path, std::ios::binary);
  if (!labels) throw FormatError("cannot open IDX labels: " + labels_path.string());

  const std::string img_name = images_path.string();
  const std::string lbl_name = labels_path.string();
  if (ReadBigEndian32(images, img_name) != kIdxImagesMagic) {
    throw FormatError("bad magic number in IDX images: " + img_name);
  }
  const uint32_t n_images = ReadBigEndian32(images, img_name);
  const uint32_t rows = ReadBigEndian32(images, img_name);
  const uint32_t cols = ReadBigEndian32(images, img_name);
  if (ReadBigEndian32(labels, lbl_name) != kIdxLabelsMagic) {
    throw FormatError("bad magic number in IDX labels: " + lbl_name);
  }
  const uint32_t n_labels = ReadBigEndian32(labels, lbl_name);
  if (n_images != n_labels) {
    throw FormatError("IDX count mismatch: " + std::to_string(n_images) +
                      " images vs " + std::to_string(n_labels) + " labels");
  }
  if (rows == 0 || cols == 0) throw FormatError("IDX images have zero size");

  const std::size_t d = static_cast<std::size_t>(rows) * cols;
  std::size_t n = n_images;
  if (limit) n = std::min(n, *limit);

  std::vector<unsigned char> pixels(d);
  std::vector<Sample> samples;
  samples.reserve(n);
  int max_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    images.read(reinterpret_cast<char*>(pixels.data()),
                static_cast<std::streamsize>(d));
    if (static_cast<std::size_t>(images.gcount()) != d) {
      throw FormatError("truncated IDX image payload at image " + std::to_string(i));
    }
    char raw_label = 0;
    labels.read(&raw_label, 1);
    if (labels.gcount() != 1) {
      throw FormatError("truncated IDX label payload at label " + std::to_string(i));
    }
    Sample s;
    s.features.resize(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      s.features[static_cast<Eigen::Index>(j)] = pixels[j] / 255.0;
    }
    s.label = static_cast<unsigned char>(raw_label) + 1;
    max_label = std::max(max_label, s.label);
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw FormatError("no samples in " + img_name);
  return Dataset(std::move(samples), static_cast<int>(d), std::max(2, max_label));
}

namespace {

std::vector<std::size_t> LossOrder(std::span<const double> losses) {
  std::vector<std::size_t> order(losses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return losses[a] < losses[b];
  });
  return order;
}

}  // namespace

std::vector<std::size_t> LowestLossIndices(std::span<const double> losses,
                                           std::size_t n) {
  if (n < 1 || n > losses.size()) {
    throw ArgumentError("subset size " + std::to_string(n) + " outside 1.." +
                        std::to_string(losses.size()));
  }
  for (double l : losses) {
    if (std::isnan(l)) throw ArgumentError("loss is NaN");
  }
  auto order = LossOrder(losses);
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

Dataset LowestLossSubset(const Dataset& data, std::span<const double> losses,
                         std::size_t n) {
  if (losses.size() != data.size()) {
    throw ArgumentError("losses length differs from dataset size");
  }
  const auto idx = LowestLossIndices(losses, n);
  return data.Select(idx);
}

LossSplit SplitIndicesByLoss(std::span<const double> losses) {
  if (losses.size() < 2) throw ArgumentError("split needs at least 2 samples");
  for (double l : losses) {
    if (std::isnan(l)) throw ArgumentError("loss is NaN");
  }
  const auto order = LossOrder(losses);
  const std::size_t n_easy = losses.size() / 2;
  LossSplit split;
  split.easy.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_easy));
  split.hard.assign(order.begin() + static_cast<std::ptrdiff_t>(n_easy), order.end());
  std::sort(split.easy.begin(), split.easy.end());
  std::sort(split.hard.begin(), split.hard.end());
  return split;
}

std::pair<Dataset, Dataset> SplitByLoss(const Dataset& data,
                                        std::span<const double> losses) {
  if (losses.size() != data.size()) {
    throw ArgumentError("losses length differs from dataset size");
  }
  const auto split = SplitIndicesByLoss(losses);
  return {data.Select(split.easy), data.Select(split.hard)};
}

std::vector<std::size_t> RandomSubsetIndices(std::size_t population, std::size_t n,
                                             uint64_t seed) {
  if (n < 1 || n > population) {
    throw ArgumentError("subset size " + std::to_string(n) + " outside 1.." +
                        std::to_string(population));
  }
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  RandomStream rng(seed, "random-subset", 0);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen), n, rng.engine());
  return chosen;
}

Dataset RandomSubset(const Dataset& data, std::size_t n, uint64_t seed) {
  const auto idx = RandomSubsetIndices(data.size(), n, seed);
  return data.Select(idx);
}

}  // namespace robscore
