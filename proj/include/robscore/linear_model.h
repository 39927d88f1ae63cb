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

#ifndef ROBSCORE_LINEAR_MODEL_H_
#define ROBSCORE_LINEAR_MODEL_H_

#include <Eigen/Core>

#include "robscore/classifier.h"

namespace robscore {

// Multinomial logistic regression: logits = beta * x + beta0, one row of
// `beta` per class.
class LinearModel final : public DifferentiableClassifier {
 public:
  LinearModel(Eigen::MatrixXd beta, Eigen::VectorXd beta0);
  static LinearModel Zero(int num_classes, int input_dim);

  // Two-class model whose class-2-minus-class-1 logit is w.x + b, split
  // symmetrically between the rows.
  static LinearModel Binomial(const Eigen::VectorXd& w, double b);

  int input_dim() const override { return static_cast<int>(beta_.cols()); }
  int num_classes() const override { return static_cast<int>(beta_.rows()); }
  Vector Logits(const VectorRef& x) const override;

  const Eigen::MatrixXd& beta() const { return beta_; }
  const Eigen::VectorXd& beta0() const { return beta0_; }

  // For K = 2: beta_2 - beta_1 and beta0_2 - beta0_1.
  Eigen::VectorXd BinomialWeights() const;
  double BinomialOffset() const;

  // Layout: beta row-major, then beta0.
  Eigen::Index parameter_count() const override;
  Vector parameters() const override;
  void set_parameters(const VectorRef& params) override;
  Vector weight_mask() const override;
  Vector LossGradient(const VectorRef& x, int label) const override;

 private:
  Eigen::MatrixXd beta_;
  Eigen::VectorXd beta0_;
};

}  // namespace robscore

#endif  // ROBSCORE_LINEAR_MODEL_H_
