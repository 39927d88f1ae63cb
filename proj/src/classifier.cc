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

#include "robscore/classifier.h"

#include <cmath>
#include <string>

#include "robscore/errors.h"

namespace robscore {

int ArgmaxLowestIndex(const VectorRef& logits) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < logits.size(); ++j) {
    if (logits[j] > logits[best]) best = j;
  }
  return static_cast<int>(best) + 1;
}

Vector Softmax(const VectorRef& logits) {
  const double top = logits.maxCoeff();
  Vector p = (logits.array() - top).exp().matrix();
  return p / p.sum();
}

double CrossEntropyFromLogits(const VectorRef& logits, int label) {
  const int top = ArgmaxLowestIndex(logits) - 1;
  const double z_max = logits[top];
  double tail = 0.0;
  for (Eigen::Index j = 0; j < logits.size(); ++j) {
    if (j != top) tail += std::exp(logits[j] - z_max);
  }
  return (z_max - logits[label - 1]) + std::log1p(tail);
}

void CheckInput(const Classifier& model, const VectorRef& x) {
  if (x.size() != model.input_dim()) {
    throw ArgumentError("input has dimension " + std::to_string(x.size()) +
                        ", model expects " + std::to_string(model.input_dim()));
  }
  if (!x.allFinite()) throw ArgumentError("input has non-finite features");
}

void CheckLabel(const Classifier& model, int label) {
  if (label < 1 || label > model.num_classes()) {
    throw ArgumentError("class index " + std::to_string(label) + " outside 1.." +
                        std::to_string(model.num_classes()));
  }
}

double CrossEntropy(const Classifier& model, const VectorRef& x, int label) {
  CheckInput(model, x);
  CheckLabel(model, label);
  return CrossEntropyFromLogits(model.Logits(x), label);
}

int Classifier::Predict(const VectorRef& x) const {
  CheckInput(*this, x);
  return ArgmaxLowestIndex(Logits(x));
}

double Classifier::Loss(const VectorRef& x, int label) const {
  return CrossEntropy(*this, x, label);
}

}  // namespace robscore
