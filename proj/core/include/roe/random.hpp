// Copyright 2026 The ROE Certify Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROE_RANDOM_HPP_
#define ROE_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace roe {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a 64 over (seed as 8 little-endian bytes || data), then Mix64.
// Identical on every platform.
std::uint64_t StableHash64(std::uint64_t seed, std::span<const std::uint8_t> data);
std::uint64_t StableHash64(std::uint64_t seed, std::string_view data);

// Portable random source. std::mt19937_64 output is fixed by the standard,
// the std distributions are not, so bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);

  // Uniform in [0, 1) with 53 bits of precision.
  double Unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace roe

#endif  // ROE_RANDOM_HPP_
