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

#ifndef ROE_ORACLE_HPP_
#define ROE_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "roe/certifier.hpp"
#include "roe/election.hpp"
#include "roe/partitioner.hpp"

namespace roe {

// Exhaustive adversary over model outputs. A controlled unit (a DPA
// partition or an FA bucket) hands the adversary every model it feeds, and
// each such model may be given any total ranking of the classes.

inline constexpr std::size_t kOracleMaxUnits = 8;
inline constexpr std::size_t kOracleMaxModels = 8;
inline constexpr std::size_t kOracleMaxClasses = 4;

// The round-1-only pair search reassigns votes, not rankings, so it admits
// larger instances.
inline constexpr std::size_t kPairOracleMaxUnits = 16;
inline constexpr std::size_t kPairOracleMaxModels = 16;

enum class AdversaryScheme { kDpaPartitions, kFaBuckets };

struct AdversaryView {
  AdversaryScheme scheme = AdversaryScheme::kDpaPartitions;
  std::vector<std::vector<std::size_t>> unit_to_models;

  std::size_t control_units() const { return unit_to_models.size(); }

  static AdversaryView DpaPartitions(std::size_t k);
  static AdversaryView FaBuckets(const SpreadMap& spread);
};

enum class Aggregator { kRoe, kPlurality };

struct AttackWitness {
  std::vector<std::size_t> units;
  std::vector<std::size_t> models;
  // Ranking (best first) assigned to each entry of `models`. The pair search
  // fills only the first element (the new vote).
  std::vector<std::vector<ClassId>> rankings;
};

struct AttackOutcome {
  int budget = 0;        // minimum budget when changed, else budget searched
  bool changed = false;
  std::optional<AttackWitness> witness;  // present iff changed
};

// Smallest budget in [0, max_budget] whose best attack changes the
// aggregator's prediction.
AttackOutcome MinAttackBudget(const LogitsTensor& logits,
                              const AdversaryView& view, int max_budget,
                              Aggregator aggregator = Aggregator::kRoe);

// True iff no attack of budget < cert changes the prediction.
bool CheckSoundness(const LogitsTensor& logits, const AdversaryView& view,
                    CertValue cert, Aggregator aggregator = Aggregator::kRoe);

// Smallest budget that makes both c1 and c2 beat c in round 1.
AttackOutcome MinAttackBudgetPair(std::span<const ClassId> predictions,
                                  std::size_t num_classes,
                                  const AdversaryView& view, ClassId c,
                                  ClassId c1, ClassId c2, int max_budget);

}  // namespace roe

#endif  // ROE_ORACLE_HPP_
