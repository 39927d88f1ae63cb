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

#include "robscore/linear_model.h"

#include "robscore/errors.h"

namespace robscore {

LinearModel::LinearModel(Eigen::MatrixXd beta, Eigen::VectorXd beta0)
    : beta_(std::move(beta)), beta0_(std::move(beta0)) {
  if (beta_.rows() < 2) throw ArgumentError("linear model needs K >= 2");
  if (beta_.cols() < 1) throw ArgumentError("linear model needs d >= 1");
  if (beta0_.size() != beta_.rows()) {
    throw ArgumentError("offset count differs from class count");
  }
  if (!beta_.allFinite() || !beta0_.allFinite()) {
    throw ArgumentError("linear model has non-finite parameters");
  }
}

LinearModel LinearModel::Zero(int num_classes, int input_dim) {
  if (num_classes < 2 || input_dim < 1) {
    throw ArgumentError("linear model needs K >= 2 and d >= 1");
  }
  return LinearModel(Eigen::MatrixXd::Zero(num_classes, input_dim),
                     Eigen::VectorXd::Zero(num_classes));
}

LinearModel LinearModel::Binomial(const Eigen::VectorXd& w, double b) {
  Eigen::MatrixXd beta(2, w.size());
  beta.row(0) = -0.5 * w.transpose();
  beta.row(1) = 0.5 * w.transpose();
  Eigen::VectorXd beta0(2);
  beta0 << -0.5 * b, 0.5 * b;
  return LinearModel(std::move(beta), std::move(beta0));
}

Vector LinearModel::Logits(const VectorRef& x) const { return beta_ * x + beta0_; }

Eigen::VectorXd LinearModel::BinomialWeights() const {
  if (num_classes() != 2) throw ArgumentError("model is not binomial");
  return (beta_.row(1) - beta_.row(0)).transpose();
}

double LinearModel::BinomialOffset() const {
  if (num_classes() != 2) throw ArgumentError("model is not binomial");
  return beta0_[1] - beta0_[0];
}

Eigen::Index LinearModel::parameter_count() const {
  return beta_.size() + beta0_.size();
}

Vector LinearModel::parameters() const {
  Vector p(parameter_count());
  const Eigen::Index k = beta_.rows();
  const Eigen::Index d = beta_.cols();
  for (Eigen::Index j = 0; j < k; ++j) p.segment(j * d, d) = beta_.row(j).transpose();
  p.tail(k) = beta0_;
  return p;
}

void LinearModel::set_parameters(const VectorRef& params) {
  if (params.size() != parameter_count()) {
    throw ArgumentError("parameter vector has the wrong length");
  }
  const Eigen::Index k = beta_.rows();
  const Eigen::Index d = beta_.cols();
  for (Eigen::Index j = 0; j < k; ++j) beta_.row(j) = params.segment(j * d, d).transpose();
  beta0_ = params.tail(k);
}

Vector LinearModel::weight_mask() const {
  Vector mask = Vector::Ones(parameter_count());
  mask.tail(beta0_.size()).setZero();
  return mask;
}

Vector LinearModel::LossGradient(const VectorRef& x, int label) const {
  CheckInput(*this, x);
  CheckLabel(*this, label);
  Vector delta = Softmax(Logits(x));
  delta[label - 1] -= 1.0;
  const Eigen::Index k = beta_.rows();
  const Eigen::Index d = beta_.cols();
  Vector grad(parameter_count());
  for (Eigen::Index j = 0; j < k; ++j) grad.segment(j * d, d) = delta[j] * x;
  grad.tail(k) = delta;
  return grad;
}

}  // namespace robscore
