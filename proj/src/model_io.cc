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

#include "robscore/model_io.h"

#include <json.hpp>

#include "robscore/errors.h"
#include "robscore/io.h"

namespace robscore {
namespace {

using nlohmann::json;

json RowMajor(const Eigen::MatrixXd& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

json Flat(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

int Dimension(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw FormatError(std::string("model JSON: missing integer field '") + key + "'");
  }
  const auto v = doc[key].get<long long>();
  if (v < 1 || v > (1 << 24)) {
    throw FormatError(std::string("model JSON: field '") + key + "' out of range");
  }
  return static_cast<int>(v);
}

Eigen::VectorXd ReadArray(const json& doc, const char* key, Eigen::Index expected) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw FormatError(std::string("model JSON: missing array '") + key + "'");
  }
  const json& arr = doc[key];
  if (static_cast<Eigen::Index>(arr.size()) != expected) {
    throw FormatError(std::string("model JSON: array '") + key + "' has " +
                      std::to_string(arr.size()) + " entries, expected " +
                      std::to_string(expected));
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    const json& e = arr[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw FormatError(std::string("model JSON: non-numeric entry in '") + key + "'");
    }
    v[i] = e.get<double>();
  }
  return v;
}

Eigen::MatrixXd ReadMatrix(const json& doc, const char* key, int rows, int cols) {
  const Eigen::VectorXd flat =
      ReadArray(doc, key, static_cast<Eigen::Index>(rows) * cols);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = flat[static_cast<Eigen::Index>(i) * cols + j];
  }
  return m;
}

}  // namespace

const DifferentiableClassifier& AsClassifier(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> const DifferentiableClassifier& { return m; }, model);
}

std::string ModelToJson(const AnyModel& model) {
  json doc;
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    doc["kind"] = "linear";
    doc["num_classes"] = lin->num_classes();
    doc["input_dim"] = lin->input_dim();
    doc["beta"] = RowMajor(lin->beta());
    doc["beta0"] = Flat(lin->beta0());
  } else {
    const auto& mlp = std::get<MlpModel>(model);
    doc["kind"] = "mlp";
    doc["num_classes"] = mlp.num_classes();
    doc["input_dim"] = mlp.input_dim();
    doc["hidden"] = mlp.hidden_width();
    doc["activation"] = "relu";
    doc["w1"] = RowMajor(mlp.w1());
    doc["b1"] = Flat(mlp.b1());
    doc["w2"] = RowMajor(mlp.w2());
    doc["b2"] = Flat(mlp.b2());
  }
  return doc.dump(2) + "\n";
}

AnyModel ModelFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw FormatError("model JSON: missing 'kind' tag");
  }
  const std::string kind = doc["kind"].get<std::string>();
  try {
    if (kind == "linear") {
      const int k = Dimension(doc, "num_classes");
      const int d = Dimension(doc, "input_dim");
      return LinearModel(ReadMatrix(doc, "beta", k, d), ReadArray(doc, "beta0", k));
    }
    if (kind == "mlp") {
      const int k = Dimension(doc, "num_classes");
      const int d = Dimension(doc, "input_dim");
      const int h = Dimension(doc, "hidden");
      return MlpModel(ReadMatrix(doc, "w1", h, d), ReadArray(doc, "b1", h),
                      ReadMatrix(doc, "w2", k, h), ReadArray(doc, "b2", k));
    }
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
  throw FormatError("model JSON: unknown kind '" + kind + "'");
}

void SaveModel(const AnyModel& model, const std::filesystem::path& path) {
  WriteFileAtomic(path, ModelToJson(model));
}

AnyModel LoadModel(const std::filesystem::path& path) {
  return ModelFromJson(ReadFile(path));
}

}  // namespace robscore
