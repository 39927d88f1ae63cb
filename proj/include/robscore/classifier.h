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

#ifndef ROBSCORE_CLASSIFIER_H_
#define ROBSCORE_CLASSIFIER_H_

#include <Eigen/Core>
#include <concepts>

namespace robscore {

using Vector = Eigen::VectorXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

// The contract every radius and score operation consumes: a K-class scorer
// over R^d. Implementations must be safe for concurrent const use.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual int input_dim() const = 0;
  virtual int num_classes() const = 0;
  virtual Vector Logits(const VectorRef& x) const = 0;

  // 1-based argmax of the logits; ties go to the lowest class index.
  int Predict(const VectorRef& x) const;

  // Cross-entropy of softmax(logits(x)) at 1-based class `label`.
  double Loss(const VectorRef& x, int label) const;
};

// Classifiers with a flat parameter vector and an analytic loss gradient.
class DifferentiableClassifier : public Classifier {
 public:
  virtual Eigen::Index parameter_count() const = 0;
  virtual Vector parameters() const = 0;
  virtual void set_parameters(const VectorRef& params) = 0;
  // 1 for parameters subject to weight decay, 0 for biases.
  virtual Vector weight_mask() const = 0;
  // d loss(x, label) / d parameters, in the layout of parameters().
  virtual Vector LossGradient(const VectorRef& x, int label) const = 0;
};

template <typename M>
concept Differentiable = std::derived_from<M, DifferentiableClassifier> &&
                         std::copy_constructible<M>;

Vector Softmax(const VectorRef& logits);
int ArgmaxLowestIndex(const VectorRef& logits);

// -log softmax_label(logits) through a max-shifted log-sum-exp; when the label
// holds the maximum the result is log1p of the shifted tail sum.
double CrossEntropyFromLogits(const VectorRef& logits, int label);

// Validates x (dimension, finiteness) and the label before evaluating.
double CrossEntropy(const Classifier& model, const VectorRef& x, int label);

void CheckInput(const Classifier& model, const VectorRef& x);
void CheckLabel(const Classifier& model, int label);

}  // namespace robscore

#endif  // ROBSCORE_CLASSIFIER_H_
