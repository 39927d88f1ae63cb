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

#ifndef ROBSCORE_RNG_H_
#define ROBSCORE_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace robscore {

// Mixes (master seed, purpose tag, index) into an independent 64-bit seed.
// Every random quantity in the library is drawn from a stream keyed this way,
// so results never depend on how work is split across threads.
uint64_t DeriveSeed(uint64_t master, std::string_view purpose, uint64_t index);

class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}
  RandomStream(uint64_t master, std::string_view purpose, uint64_t index)
      : engine_(DeriveSeed(master, purpose, index)) {}

  double Uniform() { return std::uniform_real_distribution<double>()(engine_); }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double Normal() { return std::normal_distribution<double>()(engine_); }
  bool Coin() { return std::bernoulli_distribution()(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace robscore

#endif  // ROBSCORE_RNG_H_
