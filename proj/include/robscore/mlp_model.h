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

#ifndef ROBSCORE_MLP_MODEL_H_
#define ROBSCORE_MLP_MODEL_H_

#include <Eigen/Core>

#include "robscore/classifier.h"

namespace robscore {

// One hidden rectifier layer: logits = W2 * max(0, W1 * x + b1) + b2.
class MlpModel final : public DifferentiableClassifier {
 public:
  MlpModel(Eigen::MatrixXd w1, Eigen::VectorXd b1, Eigen::MatrixXd w2,
           Eigen::VectorXd b2);

  int input_dim() const override { return static_cast<int>(w1_.cols()); }
  int num_classes() const override { return static_cast<int>(w2_.rows()); }
  int hidden_width() const { return static_cast<int>(w1_.rows()); }
  Vector Logits(const VectorRef& x) const override;

  const Eigen::MatrixXd& w1() const { return w1_; }
  const Eigen::VectorXd& b1() const { return b1_; }
  const Eigen::MatrixXd& w2() const { return w2_; }
  const Eigen::VectorXd& b2() const { return b2_; }

  // Hidden-layer pre-activations W1 * x + b1.
  Vector PreActivations(const VectorRef& x) const;

  // Layout: W1 row-major, b1, W2 row-major, b2.
  Eigen::Index parameter_count() const override;
  Vector parameters() const override;
  void set_parameters(const VectorRef& params) override;
  Vector weight_mask() const override;
  Vector LossGradient(const VectorRef& x, int label) const override;

 private:
  Eigen::MatrixXd w1_;
  Eigen::VectorXd b1_;
  Eigen::MatrixXd w2_;
  Eigen::VectorXd b2_;
};

}  // namespace robscore

#endif  // ROBSCORE_MLP_MODEL_H_
