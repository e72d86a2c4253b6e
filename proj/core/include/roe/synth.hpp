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

#ifndef ROE_SYNTH_HPP_
#define ROE_SYNTH_HPP_

#include <cstdint>

#include "roe/container.hpp"

namespace roe {

struct SynthConfig {
  std::uint32_t num_models = 1;
  std::uint32_t num_classes = 2;
  std::uint64_t n_samples = 0;
  double agreement = 1.0;  // P(model favors the true class)
  std::uint64_t seed = 0;
};

// Desk-scale stand-in for a trained ensemble. Each model row is the one-hot
// of its favored class plus noise in [0, 0.45); rows never contain exact
// ties. Bit-identical for a fixed config.
LogitsContainer SynthGenerate(const SynthConfig& config);

}  // namespace roe

#endif  // ROE_SYNTH_HPP_
