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

#include "roe/synth.hpp"

#include <algorithm>

#include "roe/random.hpp"

namespace roe {

namespace {

constexpr double kNoiseScale = 0.45;

bool HasTie(std::vector<float> row) {
  std::sort(row.begin(), row.end());
  return std::adjacent_find(row.begin(), row.end()) != row.end();
}

}  // namespace

LogitsContainer SynthGenerate(const SynthConfig& config) {
  if (config.num_models == 0 || config.num_classes < 2 ||
      config.num_classes > 65535) {
    throw Error(ErrorCode::kInvalidArgument,
                "synth: need >= 1 model and 2..65535 classes");
  }
  if (!(config.agreement >= 0.0 && config.agreement <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "synth: agreement not in [0,1]");
  }
  LogitsContainer c;
  c.num_models = config.num_models;
  c.num_classes = config.num_classes;
  c.labels.reserve(config.n_samples);
  c.scores.reserve(config.n_samples * config.num_models * config.num_classes);

  Rng rng(config.seed);
  std::vector<float> row(config.num_classes);
  for (std::uint64_t s = 0; s < config.n_samples; ++s) {
    const auto label = static_cast<std::uint16_t>(rng.Below(config.num_classes));
    c.labels.push_back(label);
    for (std::uint32_t m = 0; m < config.num_models; ++m) {
      std::uint32_t favored = label;
      if (!(rng.Unit() < config.agreement)) {
        // Uniform over the other classes.
        favored = static_cast<std::uint32_t>(rng.Below(config.num_classes - 1));
        if (favored >= label) ++favored;
      }
      do {
        for (std::uint32_t j = 0; j < config.num_classes; ++j) {
          row[j] = static_cast<float>(rng.Unit() * kNoiseScale);
        }
        row[favored] += 1.0f;
      } while (HasTie(row));
      c.scores.insert(c.scores.end(), row.begin(), row.end());
    }
  }
  return c;
}

}  // namespace roe
