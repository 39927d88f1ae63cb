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

#ifndef ROBSCORE_MODEL_IO_H_
#define ROBSCORE_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <variant>

#include "robscore/linear_model.h"
#include "robscore/mlp_model.h"

namespace robscore {

using AnyModel = std::variant<LinearModel, MlpModel>;

const DifferentiableClassifier& AsClassifier(const AnyModel& model);

// JSON document tagged with "kind": "linear" | "mlp", the dimensions, and
// row-major parameter arrays. Numbers round-trip exactly.
std::string ModelToJson(const AnyModel& model);
AnyModel ModelFromJson(const std::string& text);

void SaveModel(const AnyModel& model, const std::filesystem::path& path);
AnyModel LoadModel(const std::filesystem::path& path);

}  // namespace robscore

#endif  // ROBSCORE_MODEL_IO_H_
