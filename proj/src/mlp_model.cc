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

#include "robscore/mlp_model.h"

#include "robscore/errors.h"

namespace robscore {
namespace {

void CopyRowMajor(const Eigen::MatrixXd& m, Vector& out, Eigen::Index offset) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.segment(offset + i * m.cols(), m.cols()) = m.row(i).transpose();
  }
}

void ReadRowMajor(const VectorRef& in, Eigen::Index offset, Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) = in.segment(offset + i * m.cols(), m.cols()).transpose();
  }
}

}  // namespace

MlpModel::MlpModel(Eigen::MatrixXd w1, Eigen::VectorXd b1, Eigen::MatrixXd w2,
                   Eigen::VectorXd b2)
    : w1_(std::move(w1)), b1_(std::move(b1)), w2_(std::move(w2)), b2_(std::move(b2)) {
  if (w1_.rows() < 1) throw ArgumentError("MLP needs hidden width >= 1");
  if (w1_.cols() < 1) throw ArgumentError("MLP needs d >= 1");
  if (w2_.rows() < 2) throw ArgumentError("MLP needs K >= 2");
  if (b1_.size() != w1_.rows() || w2_.cols() != w1_.rows() || b2_.size() != w2_.rows()) {
    throw ArgumentError("MLP parameter shapes are inconsistent");
  }
  if (!w1_.allFinite() || !b1_.allFinite() || !w2_.allFinite() || !b2_.allFinite()) {
    throw ArgumentError("MLP has non-finite parameters");
  }
}

Vector MlpModel::PreActivations(const VectorRef& x) const { return w1_ * x + b1_; }

Vector MlpModel::Logits(const VectorRef& x) const {
  return w2_ * PreActivations(x).cwiseMax(0.0) + b2_;
}

Eigen::Index MlpModel::parameter_count() const {
  return w1_.size() + b1_.size() + w2_.size() + b2_.size();
}

Vector MlpModel::parameters() const {
  Vector p(parameter_count());
  Eigen::Index off = 0;
  CopyRowMajor(w1_, p, off);
  off += w1_.size();
  p.segment(off, b1_.size()) = b1_;
  off += b1_.size();
  CopyRowMajor(w2_, p, off);
  off += w2_.size();
  p.segment(off, b2_.size()) = b2_;
  return p;
}

void MlpModel::set_parameters(const VectorRef& params) {
  if (params.size() != parameter_count()) {
    throw ArgumentError("parameter vector has the wrong length");
  }
  Eigen::Index off = 0;
  ReadRowMajor(params, off, w1_);
  off += w1_.size();
  b1_ = params.segment(off, b1_.size());
  off += b1_.size();
  ReadRowMajor(params, off, w2_);
  off += w2_.size();
  b2_ = params.segment(off, b2_.size());
}

Vector MlpModel::weight_mask() const {
  Vector mask = Vector::Zero(parameter_count());
  mask.head(w1_.size()).setOnes();
  mask.segment(w1_.size() + b1_.size(), w2_.size()).setOnes();
  return mask;
}

Vector MlpModel::LossGradient(const VectorRef& x, int label) const {
  CheckInput(*this, x);
  CheckLabel(*this, label);
  const Vector pre = PreActivations(x);
  const Vector hidden = pre.cwiseMax(0.0);
  Vector delta_out = Softmax(w2_ * hidden + b2_);
  delta_out[label - 1] -= 1.0;
  Vector delta_hidden = w2_.transpose() * delta_out;
  for (Eigen::Index i = 0; i < pre.size(); ++i) {
    if (pre[i] <= 0.0) delta_hidden[i] = 0.0;
  }

  Vector grad(parameter_count());
  Eigen::Index off = 0;
  CopyRowMajor(delta_hidden * x.transpose(), grad, off);
  off += w1_.size();
  grad.segment(off, b1_.size()) = delta_hidden;
  off += b1_.size();
  CopyRowMajor(delta_out * hidden.transpose(), grad, off);
  off += w2_.size();
  grad.segment(off, b2_.size()) = delta_out;
  return grad;
}

}  // namespace robscore
