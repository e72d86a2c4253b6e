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

#include "roe/random.hpp"

namespace roe {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t FnvStep(std::uint64_t h, std::uint8_t byte) {
  return (h ^ byte) * kFnvPrime;
}

}  // namespace

std::uint64_t StableHash64(std::uint64_t seed,
                           std::span<const std::uint8_t> data) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h = FnvStep(h, static_cast<std::uint8_t>(seed >> (8 * i)));
  }
  for (std::uint8_t byte : data) h = FnvStep(h, byte);
  return Mix64(h);
}

std::uint64_t StableHash64(std::uint64_t seed, std::string_view data) {
  return StableHash64(
      seed, std::span<const std::uint8_t>(
                reinterpret_cast<const std::uint8_t*>(data.data()),
                data.size()));
}

std::uint64_t Rng::Below(std::uint64_t n) {
  // Rejection sampling off the top of the range keeps this unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % n;
}

double Rng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace roe
