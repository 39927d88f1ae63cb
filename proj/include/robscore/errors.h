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

#ifndef ROBSCORE_ERRORS_H_
#define ROBSCORE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace robscore {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition (sizes, ranges, configs).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input files.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of a function, e.g. g(0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values produced by a computation (divergent training).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A model whose parameters make the requested quantity undefined.
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

// An experiment that cannot produce a meaningful result on its inputs.
class ExperimentError : public Error {
 public:
  using Error::Error;
};

}  // namespace robscore

#endif  // ROBSCORE_ERRORS_H_
