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

#ifndef ROE_VERIFY_HPP_
#define ROE_VERIFY_HPP_

#include <cstdint>
#include <string>

#include "roe/certifier.hpp"
#include "roe/oracle.hpp"
#include "roe/random.hpp"
#include "roe/scheme.hpp"

namespace roe {

// Random logits for soundness sweeps. With `integer_scores` entries are
// drawn from {0,1,2,3}, so exact ties (and the tie-break rules) are
// exercised; otherwise entries are uniform reals.
LogitsTensor RandomLogits(Rng& rng, std::size_t num_models,
                          std::size_t num_classes, bool integer_scores);

struct SoundnessTrial {
  CertificateReport report;
  AttackOutcome attack;  // exact minimum over all budgets
  bool sound = true;
};

// Certifies `rows` (container layout for the scheme) and runs the exhaustive
// adversary against the certified prediction.
SoundnessTrial RunSoundnessTrial(const EnsembleScheme& scheme,
                                 const LogitsTensor& rows);

std::string DescribeTrial(std::size_t index, const SoundnessTrial& trial);

}  // namespace roe

#endif  // ROE_VERIFY_HPP_
